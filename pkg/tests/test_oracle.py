"""Independent cross-checks: surveys, closed forms, fixture generation."""

import json
from math import comb
from pathlib import Path

import pytest

from deckkit.decks import deck_profile, decks_equal, independent_set_count
from deckkit.graphs import SizeLimitError, cycle, enumerate_maxdeg2, parse_spec, path
from deckkit.oracle import (
    CYCLE_FIXTURE_MAX_M,
    FIXTURE_MAX_J,
    PATH_FIXTURE_MAX_N,
    cycle_card_table,
    cycle_count_closed_form,
    find_equivalence_classes,
    fixture_dump,
    independent_sets_bruteforce,
    path_card_table,
    resolve_thread_count,
    stanley_sweep,
)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


# ---------------------------------------------------------------------------
# card tables
# ---------------------------------------------------------------------------


def test_path_table_spot_values():
    assert path_card_table(5, 3) == {"P1^3": 1, "P2+P1": 6, "P3": 3}
    assert path_card_table(4, 0) == {"empty": 1}
    assert path_card_table(3, 3) == {"P3": 1}


def test_cycle_table_spot_values():
    assert cycle_card_table(7, 3) == {"P1^3": 7, "P2+P1": 21, "P3": 7}
    assert cycle_card_table(5, 5) == {"C5": 1}
    assert cycle_card_table(6, 5) == {"P5": 6}
    assert cycle_card_table(6, 3) == {"P3": 6, "P2+P1": 12, "P1^3": 2}


def test_independent_bruteforce_spot():
    assert independent_sets_bruteforce(cycle(5), 2) == 5
    assert independent_sets_bruteforce(path(4), 2) == 3
    assert independent_sets_bruteforce(parse_spec("2P1"), 2) == 1


# ---------------------------------------------------------------------------
# equal-deck surveys
# ---------------------------------------------------------------------------


def test_survey_5_3_two_classes():
    report = find_equivalence_classes(5, 3)
    assert report.total_graphs == 34
    assert report.nontrivial_count == 2
    keys = sorted(tuple(sorted(m.label for m in cls)) for cls in report.classes)
    assert keys == [("g5:198", "g5:348"), ("g5:2da", "g5:3e2")]


def test_survey_6_5_trivial():
    report = find_equivalence_classes(6, 5)
    assert report.total_graphs == 156
    assert report.nontrivial_count == 0
    assert len(report.all_groups) == 156


SEVEN_FOUR_CLASSES = [
    ("g7:13cdda", "g7:17c5da"),
    ("g7:163d08", "g7:18acc8"),
    ("g7:173d08", "g7:1cacc8"),
    ("g7:1898c0", "g7:1c3440"),
    ("g7:1998c0", "g7:1d3440"),
    ("g7:1a59c8", "g7:1d6b08"),
    ("g7:1ce9c8", "g7:1e65c8"),
    ("g7:1deb08", "g7:1eeb08"),
    ("g7:1deb48", "g7:1eeb48"),
    ("g7:1df65a", "g7:1ef65a"),
]


def test_survey_7_4_ten_pairs():
    report = find_equivalence_classes(7, 4)
    assert report.total_graphs == 1044
    assert report.nontrivial_count == 10
    assert all(len(cls) == 2 for cls in report.classes)
    assert all(m.connected for cls in report.classes for m in cls)
    keys = sorted(tuple(sorted(m.label for m in cls)) for cls in report.classes)
    assert keys == sorted(SEVEN_FOUR_CLASSES)


def test_survey_7_4_closed_under_complement():
    """The members of the ambiguous classes pair up under complementation:
    two graphs share a k-deck exactly when their complements do."""
    report = find_equivalence_classes(7, 4)
    edge_counts = sorted(
        sorted(len(m.edges) for m in cls) for cls in report.classes
    )
    full = comb(7, 2)
    tally: dict[int, int] = {}
    for pair in edge_counts:
        for e in pair:
            tally[e] = tally.get(e, 0) + 1
    assert all(tally[e] == tally.get(full - e, 0) for e in tally)


def test_finer_decks_refine_the_partition():
    """If two graphs share 4-decks they share 3-decks, so every group of the
    (6, 4) survey must sit inside one group of the (6, 3) survey."""
    coarse = find_equivalence_classes(6, 3)
    fine = find_equivalence_classes(6, 4)
    owner = {}
    for idx, group in enumerate(coarse.all_groups):
        for label in group:
            owner[label] = idx
    for group in fine.all_groups:
        assert len({owner[label] for label in group}) == 1


def test_survey_maxdeg2_9_3():
    report = find_equivalence_classes(9, 3, universe="maxdeg2")
    assert report.universe == "maxdeg2"
    assert report.nontrivial_count == 14
    classes = [sorted(m.label for m in cls) for cls in report.classes]
    assert ["C5+C4", "C9"] in classes
    assert all(m.edges is None for cls in report.classes for m in cls)


def test_long_component_decks_collapse_by_edge_count():
    """Hosts whose cycles exceed k and whose paths reach k are sorted by the
    k-deck exactly according to their number of path components."""
    for n, k in [(10, 2), (12, 3), (13, 4)]:
        by_deck: dict = {}
        for g in enumerate_maxdeg2(n):
            if all(
                size >= (k + 1 if kind == "C" else k)
                for kind, size in g.components
            ):
                by_deck.setdefault(deck_profile(g, k), []).append(g)
        for members in by_deck.values():
            paths = {sum(1 for kind, _ in m.components if kind == "P") for m in members}
            assert len(paths) == 1
        path_counts = [
            sum(1 for kind, _ in m[0].components if kind == "P")
            for m in by_deck.values()
        ]
        assert len(path_counts) == len(set(path_counts))


def test_survey_threads_agree():
    solo = find_equivalence_classes(6, 3, threads=1)
    multi = find_equivalence_classes(6, 3, threads=2)
    assert solo == multi


def test_resolve_thread_count(monkeypatch):
    monkeypatch.delenv("DECKKIT_THREADS", raising=False)
    assert resolve_thread_count(None) == 1
    assert resolve_thread_count(3) == 3
    monkeypatch.setenv("DECKKIT_THREADS", "4")
    assert resolve_thread_count(None) == 4
    assert resolve_thread_count(2) == 2
    monkeypatch.setenv("DECKKIT_THREADS", "junk")
    assert resolve_thread_count(None) == 1
    with pytest.raises(ValueError):
        resolve_thread_count(0)


def test_survey_size_gates():
    with pytest.raises(SizeLimitError):
        find_equivalence_classes(9, 3)
    with pytest.raises(SizeLimitError):
        find_equivalence_classes(19, 3, universe="maxdeg2")
    with pytest.raises(ValueError):
        find_equivalence_classes(5, 3, universe="nonsense")


def test_report_json_shape():
    payload = find_equivalence_classes(5, 3).to_json_dict()
    assert payload["total_graphs"] == 34
    assert len(payload["classes"]) == 2
    member = payload["classes"][0][0]
    assert set(member) == {"label", "connected", "edges"}


# ---------------------------------------------------------------------------
# independent-set counts over long-cycle unions
# ---------------------------------------------------------------------------


def test_stanley_18_5():
    report = stanley_sweep(18, 5)
    assert sorted(report.members) == sorted(
        ["C18", "C12+C6", "C11+C7", "C10+C8", "2C9", "3C6"]
    )
    assert report.decks_all_equal
    assert report.common_independent_count == 1782
    assert report.closed_form_count == 1782


def test_stanley_12_5_sharp_at_6():
    report = stanley_sweep(12, 5)
    assert sorted(report.members) == ["2C6", "C12"]
    assert report.decks_all_equal
    assert not decks_equal(
        deck_profile(cycle(12), 6), deck_profile(parse_spec("2C6"), 6)
    )


def test_stanley_no_members():
    report = stanley_sweep(5, 5)
    assert report.members == ()
    assert report.decks_all_equal
    assert report.common_independent_count is None


def test_closed_form_matches_bruteforce():
    for n in range(4, 13):
        for k in range(0, n // 2 + 1):
            assert cycle_count_closed_form(n, k) == independent_sets_bruteforce(
                cycle(n), k
            ), (n, k)
            assert cycle_count_closed_form(n, k) == independent_set_count(cycle(n), k)


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        cycle_count_closed_form(5, 5)
    with pytest.raises(ValueError):
        cycle_count_closed_form(5, -1)
    assert cycle_count_closed_form(5, 0) == 1


def test_stanley_size_gate():
    with pytest.raises(SizeLimitError):
        stanley_sweep(100, 3)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def test_fixture_dump_is_deterministic(tmp_path):
    first = fixture_dump(str(tmp_path / "a"))
    second = fixture_dump(str(tmp_path / "b"))
    assert first == second
    for name, meta in first["files"].items():
        a = (tmp_path / "a" / name).read_bytes()
        b = (tmp_path / "b" / name).read_bytes()
        assert a == b
        assert len(a) == meta["bytes"]


def test_fixture_dump_matches_committed_files(tmp_path):
    manifest_path = FIXTURE_DIR / "manifest.json"
    committed = json.loads(manifest_path.read_text())
    fresh = fixture_dump(str(tmp_path))
    assert fresh["files"] == committed["files"]
    for name, meta in fresh["files"].items():
        assert (FIXTURE_DIR / name).read_bytes() == (tmp_path / name).read_bytes()


def test_fixture_constants_sane():
    assert PATH_FIXTURE_MAX_N >= 10
    assert CYCLE_FIXTURE_MAX_M >= 10
    assert FIXTURE_MAX_J >= 5

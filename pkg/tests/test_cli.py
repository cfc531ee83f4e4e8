"""Command-line behavior: output shapes and the exit-code contract.

0 = success / claims hold, 1 = mismatch or ambiguity found, 2 = bad input.
"""

import json
import subprocess
import sys

import pytest

from deckkit.cli import main
from deckkit.decks import deck_profile, write_deck
from deckkit.graphs import cycle, parse_spec, path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# deck
# ---------------------------------------------------------------------------


def test_deck_text_output(capsys):
    code, out, err = run(capsys, "deck", "--graph", "C4+P1", "-k", "3")
    assert code == 0 and err == ""
    assert "C4+P1: n=5, k=3: 10 cards, 3 types" in out
    assert "4 x P3" in out and "2 x P1^3" in out and "4 x P2+P1" in out


def test_deck_single_vertex(capsys):
    code, out, err = run(capsys, "deck", "--graph", "P1", "-k", "1")
    assert code == 0
    assert "1 cards, 1 types" in out


def test_deck_json_counts_are_strings(capsys):
    code, out, err = run(capsys, "deck", "--graph", "C4+P1", "-k", "3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 5 and payload["k"] == 3
    assert payload["counts"] == {"P3": "4", "P2+P1": "4", "P1^3": "2"}


def test_deck_k_out_of_range(capsys):
    code, out, err = run(capsys, "deck", "--graph", "C7", "-k", "8")
    assert code == 2
    assert out == ""
    assert "out of range" in err


def test_deck_bad_spec(capsys):
    code, out, err = run(capsys, "deck", "--graph", "C2", "-k", "1")
    assert code == 2 and out == ""
    assert "cycle length" in err


def test_deck_bad_spec_json_emits_nothing(capsys):
    code, out, err = run(capsys, "deck", "--graph", "Q5", "-k", "1", "--json")
    assert code == 2
    assert out == ""


def test_deck_brute_agrees(capsys):
    code, out, err = run(capsys, "deck", "--graph", "C4+P1", "-k", "3", "--brute", "--json")
    assert code == 0
    payload = json.loads(out)
    assert sum(int(v) for v in payload["counts"].values()) == 10


def test_deck_edges_requires_brute(capsys, tmp_path):
    target = tmp_path / "g.edges"
    target.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, out, err = run(capsys, "deck", "--edges", str(target), "-k", "2")
    assert code == 2 and "--brute" in err

    code, out, err = run(capsys, "deck", "--edges", str(target), "-k", "2", "--json")
    assert code == 2


def test_deck_edges_with_brute(capsys, tmp_path):
    target = tmp_path / "claw.edges"
    target.write_text("4 3\n0 1\n0 2\n0 3\n")
    code, out, err = run(capsys, "deck", "--edges", str(target), "-k", "2", "--brute", "--json")
    assert code == 0
    payload = json.loads(out)
    # three edges and three non-edges among the pairs
    assert sorted(payload["counts"].values()) == ["3", "3"]


def test_deck_missing_edge_file(capsys, tmp_path):
    code, out, err = run(capsys, "deck", "--edges", str(tmp_path / "nope"), "-k", "2", "--brute")
    assert code == 2 and out == ""


def test_deck_row_cap(capsys):
    # p(11) = 56 path-forest shapes fit on 11-vertex cards of a long path
    code, out, err = run(capsys, "deck", "--graph", "P30", "-k", "11")
    assert code == 0
    assert "6 more rows" in out
    assert len([l for l in out.splitlines() if l.startswith("  ")]) <= 51


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def test_compare_equal(capsys):
    code, out, err = run(capsys, "compare", "--g1", "P8", "--g2", "C5+P3", "-k", "4")
    assert code == 0
    assert "4-decks equal" in out


def test_compare_differs(capsys):
    code, out, err = run(capsys, "compare", "--g1", "P8", "--g2", "C5+P3", "-k", "5")
    assert code == 1
    assert "5-decks differ at card C5: 0 vs 1" in out


def test_compare_json(capsys):
    code, out, err = run(capsys, "compare", "--g1", "P8", "--g2", "C5+P3", "-k", "5", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["equal"] is False
    assert payload["first_difference"] == {"card": "C5", "g1_count": "0", "g2_count": "1"}


def test_compare_brute(capsys):
    code, out, err = run(capsys, "compare", "--g1", "C9", "--g2", "C5+C4", "-k", "3", "--brute")
    assert code == 0


def test_compare_bad_k(capsys):
    code, out, err = run(capsys, "compare", "--g1", "P3", "--g2", "P3", "-k", "9")
    assert code == 2 and out == ""


# ---------------------------------------------------------------------------
# rho
# ---------------------------------------------------------------------------


def test_rho_formula_only(capsys):
    code, out, err = run(capsys, "rho", "--graph", "C12")
    assert code == 0
    assert "rho (formula)            6" in out


def test_rho_verified_agreement(capsys):
    code, out, err = run(capsys, "rho", "--graph", "P7", "--verify", "general")
    assert code == 0
    assert "agrees" in out


def test_rho_below_range_disagreement(capsys):
    code, out, err = run(capsys, "rho", "--graph", "C5", "--verify", "general")
    assert code == 1
    assert "below the formula's proven range" in out
    assert "DISAGREES" in out


def test_rho_json(capsys):
    code, out, err = run(capsys, "rho", "--graph", "C12", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["rho"] == 6
    assert payload["search"] is None and payload["agree"] is None


def test_rho_respects_nmax(capsys):
    code, out, err = run(capsys, "rho", "--graph", "C12", "--verify", "general")
    assert code == 2
    assert "capped at --nmax" in err


def test_rho_nmax_override(capsys):
    code, out, err = run(capsys, "rho", "--graph", "P4", "--verify", "general", "--nmax", "6")
    assert code == 0


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------


def test_reconstruct_unique(capsys, tmp_path):
    target = tmp_path / "deck.json"
    write_deck(deck_profile(parse_spec("C7+P3"), 5), str(target))
    code, out, err = run(capsys, "reconstruct", "--deck", str(target))
    assert code == 0
    assert "outcome: unique" in out and "C7+P3" in out


def test_reconstruct_ambiguous(capsys, tmp_path):
    target = tmp_path / "deck.json"
    write_deck(deck_profile(parse_spec("C7+P3"), 4), str(target))
    code, out, err = run(capsys, "reconstruct", "--deck", str(target), "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["outcome"] == "ambiguous"
    assert sorted(payload["graphs"]) == ["C5+P5", "C6+P4", "C7+P3", "P10"]


def test_reconstruct_ambiguous_cycle(capsys, tmp_path):
    target = tmp_path / "deck.json"
    write_deck(deck_profile(cycle(9), 3), str(target))
    code, out, err = run(capsys, "reconstruct", "--deck", str(target))
    assert code == 1
    assert "C5+C4" in out and "C9" in out


def test_reconstruct_n_mismatch(capsys, tmp_path):
    target = tmp_path / "deck.json"
    write_deck(deck_profile(path(5), 3), str(target))
    code, out, err = run(capsys, "reconstruct", "--deck", str(target), "-n", "6")
    assert code == 2
    assert "inconsistent" in out


def test_reconstruct_malformed_file(capsys, tmp_path):
    target = tmp_path / "deck.json"
    target.write_text("{not json")
    code, out, err = run(capsys, "reconstruct", "--deck", str(target))
    assert code == 2 and out == ""

    target.write_text(json.dumps({"n": 5}))
    code, out, err = run(capsys, "reconstruct", "--deck", str(target))
    assert code == 2 and out == ""


def test_reconstruct_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "reconstruct", "--deck", str(tmp_path / "nope.json"))
    assert code == 2 and out == ""


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------


def test_pairs_finds_classes(capsys):
    code, out, err = run(capsys, "pairs", "-n", "5", "-k", "3")
    assert code == 1
    assert "2 nontrivial classes" in out


def test_pairs_none_found(capsys):
    code, out, err = run(capsys, "pairs", "-n", "6", "-k", "4")
    assert code == 0
    assert "0 nontrivial classes" in out


def test_pairs_json(capsys):
    code, out, err = run(capsys, "pairs", "-n", "5", "-k", "3", "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload["total_graphs"] == 34
    assert len(payload["classes"]) == 2


def test_pairs_maxdeg2(capsys):
    code, out, err = run(capsys, "pairs", "-n", "9", "-k", "3", "--universe", "maxdeg2")
    assert code == 1
    assert "14 nontrivial classes" in out


def test_pairs_size_gate(capsys):
    code, out, err = run(capsys, "pairs", "-n", "9", "-k", "3")
    assert code == 2
    assert out == ""


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_exceptions_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "exceptions")
    assert code == 0
    assert "all checks passed" in out


def test_verify_main_suite_bounded(capsys):
    code, out, err = run(capsys, "verify", "--suite", "main", "--max-n", "12")
    assert code == 0
    assert "suite main" in out


def test_verify_stanley_bounded_json(capsys):
    code, out, err = run(capsys, "verify", "--suite", "stanley", "--max-n", "12", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "stanley" and payload["ok"] is True


def test_verify_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# argparse-level errors and process-level smoke
# ---------------------------------------------------------------------------


def test_missing_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_deck_requires_graph_or_edges(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["deck", "-k", "2"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deckkit", "deck", "--graph", "P1", "-k", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "1 cards" in proc.stdout


def test_console_script():
    proc = subprocess.run(
        ["deckkit", "rho", "--graph", "C12"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "6" in proc.stdout

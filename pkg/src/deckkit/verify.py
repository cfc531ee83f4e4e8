"""Invariant suites behind the command line's ``verify`` subcommand.

Each suite re-derives one family of claims from scratch and reports one
row per checked batch.  Suites never stop at the first failure; when
something breaks the result carries every discrepancy, because a partial
listing is useless for deciding whether a formula or an engine is wrong.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .decks import deck_profile, deck_profile_bruteforce, decks_equal
from .graphs import MaxDeg2Graph, cycle, enumerate_maxdeg2, path, to_general
from .oracle import resolve_thread_count, stanley_sweep
from .recon import rho_report, rho_search, witness_decks_agree, witness_pair


@dataclass(frozen=True)
class CheckRecord:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one named suite: a flat list of labeled checks."""

    suite: str
    records: tuple[CheckRecord, ...]
    elapsed: float

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.ok)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.ok]

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "passed": self.passed,
            "failed": self.failed,
            "elapsed_seconds": round(self.elapsed, 3),
            "checks": [
                {"label": r.label, "ok": r.ok, "detail": r.detail}
                for r in self.records
            ],
        }


def _batch(label: str, failures: list[str], count: int) -> CheckRecord:
    if failures:
        return CheckRecord(label, False, f"{len(failures)}/{count} failed: " + "; ".join(failures))
    return CheckRecord(label, True, f"{count} instances")


# ---------------------------------------------------------------------------
# main: the equal-deck identities for unions of long paths and cycles
# ---------------------------------------------------------------------------


def run_main_suite(max_total: int = 30) -> SuiteResult:
    """Grid check of the three structural equal-deck identities.

    For every order k up to 6 and every admissible pair of sizes with
    q + r <= max_total, the one-cycle/two-cycle split, the path/cycle+path
    trade, and the one-vertex path shift must give equal k-decks.  The
    suite also confirms the splits are sharp: two k-cycles and one
    2k-cycle have different k-decks.
    """
    t0 = time.time()
    records: list[CheckRecord] = []
    for k in range(1, 7):
        for kind in ("cycle_split", "cycle_path", "path_shift"):
            failures: list[str] = []
            count = 0
            lo_q = max(k + 1, 3) if kind != "path_shift" else max(k, 2)
            for q in range(lo_q, max_total + 1):
                if kind == "cycle_split":
                    r_range = range(q, max_total - q + 1)
                elif kind == "cycle_path":
                    r_range = range(max(k - 1, 1), max_total - q + 1)
                else:
                    # swapping q and r swaps the two sides, so check q < r once
                    r_range = range(q + 1, max_total - q + 1)
                for r in r_range:
                    pair = witness_pair(kind, q=q, r=r, k=k)
                    count += 1
                    if not witness_decks_agree(pair):
                        failures.append(f"q={q},r={r}")
            records.append(_batch(f"{kind} decks equal at k={k}", failures, count))
    sharp_failures = []
    for k in range(3, 7):
        split = deck_profile(cycle(k) + cycle(k), k)
        whole = deck_profile(cycle(2 * k), k)
        if decks_equal(split, whole):
            sharp_failures.append(f"k={k}")
    records.append(_batch("cycle split sharp at q=r=k", sharp_failures, 4))
    return SuiteResult("main", tuple(records), time.time() - t0)


# ---------------------------------------------------------------------------
# stanley: cycle structure beyond length k is invisible to the k-deck
# ---------------------------------------------------------------------------


def run_stanley_suite(max_n: int = 18) -> SuiteResult:
    t0 = time.time()
    records = []
    for k in range(1, 7):
        failures = []
        count = 0
        for n in range(max(3, k + 1), max_n + 1):
            report = stanley_sweep(n, k)
            if not report.members:
                continue
            count += 1
            if not report.decks_all_equal:
                failures.append(f"n={n}: decks differ across {report.members}")
            elif (
                report.closed_form_count is not None
                and report.common_independent_count != report.closed_form_count
            ):
                failures.append(
                    f"n={n}: count {report.common_independent_count}"
                    f" != closed form {report.closed_form_count}"
                )
        records.append(_batch(f"cycle unions share k-decks, k={k}", failures, count))
    return SuiteResult("stanley", tuple(records), time.time() - t0)


# ---------------------------------------------------------------------------
# exceptions: degree-3 impostors matching 3-decks of max-degree-2 graphs
# ---------------------------------------------------------------------------


def _impostor_cases(max_m: int):
    for m in range(4, max_m + 1):
        yield f"cycle m={m}", witness_pair("impostor", variant="cycle", m=m)
    for m in range(5, max_m + 1):
        yield f"path m={m}", witness_pair("impostor", variant="path", m=m)
    yield "paw", witness_pair("impostor", variant="paw")
    yield "k4", witness_pair("impostor", variant="k4")


def run_exceptions_suite(max_m: int = 9) -> SuiteResult:
    """The four impostor families: equal 3-decks, split by the 4-deck.

    Every pair joins a max-degree-2 graph with a graph containing a
    degree-3 vertex, so the 3-deck provably cannot pin down the maximum
    degree.  The 4-deck must tell them apart, and the degree lists differ
    by construction.
    """
    t0 = time.time()
    eq_fail, neq_fail, deg_fail = [], [], []
    count = 0
    for name, pair in _impostor_cases(max_m):
        count += 1
        if not witness_decks_agree(pair):
            eq_fail.append(name)
        ga = to_general(pair.a) if isinstance(pair.a, MaxDeg2Graph) else pair.a
        gb = to_general(pair.b) if isinstance(pair.b, MaxDeg2Graph) else pair.b
        if deck_profile_bruteforce(ga, 4) == deck_profile_bruteforce(gb, 4):
            neq_fail.append(name)
        if sorted(ga.degree_list()) == sorted(gb.degree_list()):
            deg_fail.append(name)
    records = (
        _batch("impostor 3-decks equal", eq_fail, count),
        _batch("impostor 4-decks differ", neq_fail, count),
        _batch("impostor degree lists differ", deg_fail, count),
    )
    return SuiteResult("exceptions", records, time.time() - t0)


# ---------------------------------------------------------------------------
# manvel: star forests with equal k-decks but different maximum degree
# ---------------------------------------------------------------------------


def run_manvel_suite(max_host: int = 56, threads: int | None = None) -> SuiteResult:
    """Star-forest twins for k = 2..5, capped by host size.

    The k = 5 hosts have 56 vertices each, so their brute-force 5-decks
    cover about 3.8 million subsets per side; with two or more workers
    the two sides run in parallel processes.
    """
    t0 = time.time()
    workers = resolve_thread_count(threads)
    records = []
    for k in range(2, 6):
        pair = witness_pair("star_forest", k=k)
        if pair.a.n > max_host:
            continue
        if workers >= 2 and pair.a.n >= 40:
            with ProcessPoolExecutor(max_workers=2) as pool:
                fa = pool.submit(deck_profile_bruteforce, pair.a, k)
                fb = pool.submit(deck_profile_bruteforce, pair.b, k)
                equal = fa.result() == fb.result()
        else:
            equal = witness_decks_agree(pair)
        records.append(
            CheckRecord(
                f"star forests share {k}-deck (hosts n={pair.a.n})",
                equal,
                "" if equal else "decks differ",
            )
        )
        da, db = max(pair.a.degree_list()), max(pair.b.degree_list())
        records.append(
            CheckRecord(
                f"star forest max degrees {k} vs {k - 1}",
                (da, db) == (k, k - 1),
                f"got {da} vs {db}",
            )
        )
        if pair.a.n <= 30:
            split = deck_profile_bruteforce(pair.a, k + 1) != deck_profile_bruteforce(
                pair.b, k + 1
            )
            records.append(
                CheckRecord(
                    f"star forests split by ({k + 1})-deck",
                    split,
                    "" if split else "decks still equal",
                )
            )
    return SuiteResult("manvel", tuple(records), time.time() - t0)


# ---------------------------------------------------------------------------
# rho: the closed-form threshold against exhaustive search
# ---------------------------------------------------------------------------


def run_rho_suite(max_n: int = 14, general_max_n: int = 8) -> SuiteResult:
    """Formula-versus-search sweep over small max-degree-2 graphs.

    Two clauses: against the all-graphs universe for 6 <= n <= 8, and
    against the max-degree-2 universe for 6 <= n <= max_n restricted to
    graphs whose largest component has at least 6 vertices.  Any
    disagreement is listed with both values; a failing row here means a
    formula case is wrong for that universe, not that the search broke.
    """
    t0 = time.time()
    records = []
    hi_general = min(general_max_n, max_n)
    failures = []
    count = 0
    for n in range(6, hi_general + 1):
        for g in enumerate_maxdeg2(n):
            count += 1
            formula = rho_report(g).rho
            searched = rho_search(g, universe="general")
            if formula != searched:
                failures.append(f"{g.to_spec()}: formula {formula}, search {searched}")
    records.append(_batch(f"formula = general search, n=6..{hi_general}", failures, count))
    failures = []
    count = 0
    for n in range(6, max_n + 1):
        for g in enumerate_maxdeg2(n):
            biggest = max(size for _, size in g.components) if g.components else 0
            if biggest < 6:
                continue
            count += 1
            formula = rho_report(g).rho
            searched = rho_search(g, universe="maxdeg2")
            if formula != searched:
                failures.append(f"{g.to_spec()}: formula {formula}, search {searched}")
    records.append(
        _batch(f"formula = max-degree-2 search, n=6..{max_n}, largest >= 6", failures, count)
    )
    return SuiteResult("rho", tuple(records), time.time() - t0)


SUITES = {
    "main": run_main_suite,
    "stanley": run_stanley_suite,
    "exceptions": run_exceptions_suite,
    "manvel": run_manvel_suite,
    "rho": run_rho_suite,
}

"""Command-line front end: decks, comparisons, thresholds, surveys.

Exit codes follow one contract everywhere: 0 means success and every
checked claim held, 1 means a mismatch or an ambiguity was found, 2
means the input was unusable.  With ``--json`` the payload is a single
complete JSON document on stdout; errors go to stderr and never leave a
partial document behind.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decks import (
    DeckConsistencyError,
    DeckProfile,
    deck_profile,
    deck_profile_bruteforce,
    read_deck,
)
from .graphs import (
    GraphSpecError,
    SizeLimitError,
    parse_spec,
    read_edge_file,
    to_general,
)
from .oracle import find_equivalence_classes
from .recon import AMBIGUOUS, INCONSISTENT, reconstruct, rho_report, rho_search
from .verify import SUITES, run_manvel_suite, run_rho_suite

TABLE_CAP = 50


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit_rows(rows: list[str]) -> None:
    for row in rows[:TABLE_CAP]:
        print(row)
    if len(rows) > TABLE_CAP:
        print(f"  ... {len(rows) - TABLE_CAP} more rows (use --json for the full list)")


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# deck
# ---------------------------------------------------------------------------


def _load_graph_arg(args) -> tuple:
    """Returns (max-degree-2 graph or None, general graph or None, name)."""
    if args.graph is not None:
        g = parse_spec(args.graph)
        return g, None, g.to_spec()
    gg = read_edge_file(args.edges)
    return None, gg, args.edges


def cmd_deck(args) -> int:
    if args.edges is not None and not args.brute:
        return _fail("edge-list input has no closed form; pass --brute")
    try:
        g, gg, name = _load_graph_arg(args)
    except (GraphSpecError, OSError, ValueError) as exc:
        return _fail(str(exc))
    n = g.n if g is not None else gg.n
    if not 0 <= args.k <= n:
        return _fail(f"k={args.k} out of range for a graph on {n} vertices")
    try:
        if g is not None and not args.brute:
            profile = deck_profile(g, args.k)
        else:
            host = gg if gg is not None else to_general(g)
            profile = deck_profile_bruteforce(host, args.k)
    except SizeLimitError as exc:
        return _fail(str(exc))
    if args.json:
        _print_json(profile.to_json_dict())
        return 0
    items = profile.sorted_items()
    print(f"{name}: n={n}, k={args.k}: {profile.total} cards, {len(items)} types")
    _emit_rows([f"  {count} x {key}" for key, count in items])
    return 0


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def _first_difference(a: DeckProfile, b: DeckProfile):
    keys = sorted(set(dict(a.sorted_items())) | set(dict(b.sorted_items())))
    for key in keys:
        if a.get(key) != b.get(key):
            return key, a.get(key), b.get(key)
    return None


def cmd_compare(args) -> int:
    try:
        g1 = parse_spec(args.g1)
        g2 = parse_spec(args.g2)
    except GraphSpecError as exc:
        return _fail(str(exc))
    if args.k < 0 or args.k > max(g1.n, g2.n):
        return _fail(f"k={args.k} out of range for graphs on {g1.n} and {g2.n} vertices")
    try:
        if args.brute:
            d1 = deck_profile_bruteforce(to_general(g1), args.k)
            d2 = deck_profile_bruteforce(to_general(g2), args.k)
        else:
            d1 = deck_profile(g1, args.k)
            d2 = deck_profile(g2, args.k)
    except SizeLimitError as exc:
        return _fail(str(exc))
    diff = _first_difference(d1, d2)
    if args.json:
        payload = {
            "g1": g1.to_spec(),
            "g2": g2.to_spec(),
            "k": args.k,
            "equal": diff is None,
            "first_difference": None
            if diff is None
            else {"card": diff[0], "g1_count": str(diff[1]), "g2_count": str(diff[2])},
        }
        _print_json(payload)
        return 0 if diff is None else 1
    if diff is None:
        print(f"{g1.to_spec()} and {g2.to_spec()}: {args.k}-decks equal ({d1.total} cards)")
        return 0
    key, c1, c2 = diff
    print(
        f"{g1.to_spec()} and {g2.to_spec()}: {args.k}-decks differ"
        f" at card {key}: {c1} vs {c2}"
    )
    return 1


# ---------------------------------------------------------------------------
# rho
# ---------------------------------------------------------------------------


def cmd_rho(args) -> int:
    try:
        g = parse_spec(args.graph)
    except GraphSpecError as exc:
        return _fail(str(exc))
    report = rho_report(g)
    searched = None
    if args.verify is not None:
        nmax = args.nmax if args.nmax is not None else (8 if args.verify == "general" else 14)
        if g.n > nmax:
            return _fail(f"graph has n={g.n} vertices; verification capped at --nmax {nmax}")
        try:
            searched = rho_search(
                g, universe=args.verify, allow_n9=(args.verify == "general" and nmax >= 9)
            )
        except SizeLimitError as exc:
            return _fail(str(exc))
    agree = None if searched is None else searched == report.rho
    if args.json:
        payload = {
            "graph": g.to_spec(),
            "n": g.n,
            "report": report.to_json_dict(),
            "search": None
            if searched is None
            else {"universe": args.verify, "rho": searched},
            "agree": agree,
        }
        _print_json(payload)
        return 0 if agree in (None, True) else 1
    print(f"{g.to_spec()}: n={g.n}")
    print(f"  largest component size   {report.largest}")
    print(f"  second component size    {report.second}")
    print(f"  path bonus               {report.path_bonus}")
    print(f"  second-component bonus   {report.second_bonus}")
    print(f"  threshold                {report.threshold}")
    print(f"  exceptional family       {'yes' if report.exceptional else 'no'}")
    print(f"  rho (formula)            {report.rho}")
    if report.below_proven_range:
        print("  note: threshold fell below the formula's proven range;")
        print("        exhaustive search is the ground truth for this graph")
    if searched is not None:
        verdict = "agrees" if agree else "DISAGREES"
        print(f"  search over {args.verify}: rho = {searched} ({verdict} with formula)")
        return 0 if agree else 1
    return 0


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------


def cmd_reconstruct(args) -> int:
    try:
        profile = read_deck(args.deck)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    try:
        result = reconstruct(profile, args.n)
    except (SizeLimitError, DeckConsistencyError) as exc:
        return _fail(str(exc))
    if args.json:
        _print_json(result.to_json_dict())
    else:
        print(f"outcome: {result.outcome} (method: {result.method})")
        if result.outcome == INCONSISTENT:
            print(f"  reason: {result.reason}")
        else:
            _emit_rows([f"  {g.to_spec()}" for g in result.graphs])
    if result.outcome == INCONSISTENT:
        return 2
    return 0 if result.is_unique else 1


# ---------------------------------------------------------------------------
# pairs
# ---------------------------------------------------------------------------


def cmd_pairs(args) -> int:
    try:
        report = find_equivalence_classes(
            args.n, args.k, args.universe, threads=args.threads, allow_n9=args.allow_n9
        )
    except (SizeLimitError, ValueError) as exc:
        return _fail(str(exc))
    if args.json:
        _print_json(report.to_json_dict())
        return 1 if report.nontrivial_count else 0
    print(
        f"universe {args.universe}, n={args.n}, k={args.k}: "
        f"{report.total_graphs} graphs, {report.nontrivial_count} nontrivial classes"
    )
    rows = []
    for cls in report.classes:
        members = ", ".join(
            f"{m.label} ({'connected' if m.connected else 'disconnected'})" for m in cls
        )
        rows.append(f"  size {len(cls)}: {members}")
    _emit_rows(rows)
    return 1 if report.nontrivial_count else 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "manvel":
        result = run_manvel_suite(
            max_host=args.max_n if args.max_n is not None else 56, threads=args.threads
        )
    elif suite == "rho":
        result = run_rho_suite(max_n=args.max_n if args.max_n is not None else 14)
    else:
        defaults = {"main": 30, "stanley": 18, "exceptions": 9}
        bound = args.max_n if args.max_n is not None else defaults[suite]
        result = SUITES[suite](bound)
    if args.json:
        _print_json(result.to_json_dict())
        return 0 if result.ok else 1
    rows = []
    for rec in result.records:
        mark = "  ok  " if rec.ok else " FAIL "
        detail = f"  [{rec.detail}]" if rec.detail else ""
        rows.append(f"[{mark.strip():^4}] {rec.label}{detail}")
    _emit_rows(rows)
    state = "all checks passed" if result.ok else f"{result.failed} check(s) FAILED"
    print(f"suite {result.suite}: {state} ({result.passed}/{len(result.records)} ok, "
          f"{result.elapsed:.1f}s)")
    return 0 if result.ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deckkit",
        description="Induced-subgraph decks of small graphs: compute, compare, invert.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deck", help="compute the k-deck of one graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="SPEC", help="component spec such as C5+2P3")
    src.add_argument("--edges", metavar="FILE", help="edge-list file (needs --brute)")
    p.add_argument("-k", type=int, required=True, help="card order")
    p.add_argument("--brute", action="store_true", help="use the subset-enumeration oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("compare", help="compare the k-decks of two graphs")
    p.add_argument("--g1", required=True, metavar="SPEC")
    p.add_argument("--g2", required=True, metavar="SPEC")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--brute", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rho", help="reconstruction threshold of a max-degree-2 graph")
    p.add_argument("--graph", required=True, metavar="SPEC")
    p.add_argument(
        "--verify",
        choices=("maxdeg2", "general"),
        help="also run the exhaustive search over this universe",
    )
    p.add_argument("--nmax", type=int, help="largest graph order the search may take on")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("reconstruct", help="invert a deck back to its graphs")
    p.add_argument("--deck", required=True, metavar="FILE.json")
    p.add_argument("-n", type=int, help="vertex count cross-check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("pairs", help="survey a universe for graphs sharing a k-deck")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--universe", choices=("maxdeg2", "general"), default="general")
    p.add_argument("--threads", type=int, help="worker count (DECKKIT_THREADS as fallback)")
    p.add_argument(
        "--allow-n9",
        action="store_true",
        help="permit the n=9 general survey (274668 classes, takes minutes)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("verify", help="run one of the built-in invariant suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument(
        "--max-n",
        type=int,
        dest="max_n",
        help="size bound: total vertices (main), n (stanley/rho), impostor size "
        "(exceptions), host order (manvel)",
    )
    p.add_argument("--threads", type=int, help="worker count (DECKKIT_THREADS as fallback)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Where the threshold formula and the two search universes part ways.

Sweeps all max-degree-2 graphs in a vertex range and tabulates three
values per graph: the closed-form threshold, the search over the
max-degree-2 universe, and (for small n) the search over all graphs.
The interesting rows are the ones where the columns disagree:

* graphs whose threshold falls below 3 (short single components), where
  the formula's derivation does not apply at all; and
* the exceptional family with an isolated vertex, where the formula
  charges an extra deck order for a degree-3 twin.  That twin exists in
  the general universe but by definition not in the max-degree-2 one,
  so the formula sits strictly above the max-degree-2 search there.
"""

import argparse
import sys

from deckkit.graphs import enumerate_maxdeg2
from deckkit.recon import rho_report, rho_search


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument(
        "--general-max-n",
        type=int,
        default=8,
        help="run the all-graphs search up to this order (expensive past 8)",
    )
    parser.add_argument("--all", action="store_true", help="print agreeing rows too")
    args = parser.parse_args()

    header = f"{'graph':<16} {'formula':>7} {'maxdeg2':>8} {'general':>8}  notes"
    print(header)
    print("-" * len(header))
    disagreements = 0
    for n in range(args.min_n, args.max_n + 1):
        for g in enumerate_maxdeg2(n):
            report = rho_report(g)
            md2 = rho_search(g, universe="maxdeg2")
            gen = (
                rho_search(g, universe="general")
                if n <= args.general_max_n
                else None
            )
            notes = []
            if report.below_proven_range:
                notes.append("below proven range")
            if report.exceptional:
                notes.append("exceptional family")
            mismatch = md2 != report.rho or (gen is not None and gen != report.rho)
            if mismatch:
                disagreements += 1
            if mismatch or args.all:
                gen_s = "-" if gen is None else str(gen)
                flag = " <-" if mismatch else ""
                print(
                    f"{g.to_spec():<16} {report.rho:>7} {md2:>8} {gen_s:>8}  "
                    f"{', '.join(notes)}{flag}"
                )
    print(f"\n{disagreements} graphs with at least one disagreement")
    return 0


if __name__ == "__main__":
    sys.exit(main())

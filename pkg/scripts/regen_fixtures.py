#!/usr/bin/env python3
"""Regenerate the committed oracle fixtures.

Run from the repository root; compares the fresh manifest against the
committed one and exits 1 on any drift, so CI can call this directly.
"""

import argparse
import json
import sys
from pathlib import Path

from deckkit.oracle import fixture_dump


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures", help="fixture directory")
    parser.add_argument(
        "--scope", choices=("cards", "decks", "all"), default="all"
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="regenerate into a scratch directory and diff digests instead of writing",
    )
    args = parser.parse_args()

    if not args.check:
        manifest = fixture_dump(args.out, args.scope)
        print(f"wrote {len(manifest['files'])} fixture files to {args.out}/")
        return 0

    committed = Path(args.out) / "manifest.json"
    if not committed.exists():
        print(f"no committed manifest at {committed}", file=sys.stderr)
        return 1
    old = json.loads(committed.read_text())
    import tempfile

    with tempfile.TemporaryDirectory() as scratch:
        fresh = fixture_dump(scratch, args.scope)
    drift = []
    for name, meta in fresh["files"].items():
        if old["files"].get(name, {}).get("sha256") != meta["sha256"]:
            drift.append(name)
    if drift:
        print("fixture drift in: " + ", ".join(drift), file=sys.stderr)
        return 1
    print(f"{len(fresh['files'])} fixtures match the committed digests")
    return 0


if __name__ == "__main__":
    sys.exit(main())

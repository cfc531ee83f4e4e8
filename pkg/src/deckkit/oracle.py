"""Independent ground truth and exhaustive surveys.

Everything here recomputes results by direct enumeration, deliberately not
sharing formulas with the fast engines, so the two sides can be tested
against each other.  The survey entry points group whole universes of
graphs by deck and are the basis for the falsifiable claims in the test
suite (the seven-vertex hunt, the independent-set sweeps).
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .decks import (
    DeckProfile,
    EMPTY_CARD,
    card_key,
    deck_profile,
    deck_profile_bruteforce,
)
from .graphs import (
    CYCLE,
    PATH,
    GeneralGraph,
    MaxDeg2Graph,
    SizeLimitError,
    canonical_code,
    enumerate_general,
    enumerate_maxdeg2,
    to_general,
)

MAX_STANLEY_VERTICES = 24
MAX_STANLEY_ORDER = 7


# ---------------------------------------------------------------------------
# card-count oracles (subset enumeration, no closed forms)
# ---------------------------------------------------------------------------


def _runs_to_key(runs: Sequence[int]) -> str:
    return card_key(MaxDeg2Graph(tuple((PATH, r) for r in runs)))


def path_card_table(n: int, j: int) -> dict[str, int]:
    """Card counts for j-subsets of a path, by brute enumeration."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    if j == 0:
        return {EMPTY_CARD: 1}
    out: dict[str, int] = {}
    for sub in combinations(range(n), j):
        runs = []
        run = 1
        for a, b in zip(sub, sub[1:]):
            if b == a + 1:
                run += 1
            else:
                runs.append(run)
                run = 1
        runs.append(run)
        key = _runs_to_key(runs)
        out[key] = out.get(key, 0) + 1
    return out


def cycle_card_table(m: int, j: int) -> dict[str, int]:
    """Card counts for j-subsets of a cycle, by brute enumeration."""
    if m < 3:
        raise ValueError(f"cycles need at least 3 vertices, got {m}")
    if not 0 <= j <= m:
        raise ValueError(f"need 0 <= j <= m, got j={j}, m={m}")
    if j == 0:
        return {EMPTY_CARD: 1}
    if j == m:
        return {card_key(MaxDeg2Graph(((CYCLE, m),))): 1}
    out: dict[str, int] = {}
    for sub in combinations(range(m), j):
        chosen = set(sub)
        runs = []
        for v in sub:
            if (v - 1) % m in chosen:
                continue  # not the start of a run
            length = 1
            w = v
            while (w + 1) % m in chosen:
                length += 1
                w = (w + 1) % m
            runs.append(length)
        key = _runs_to_key(runs)
        out[key] = out.get(key, 0) + 1
    return out


def independent_sets_bruteforce(g: MaxDeg2Graph | GeneralGraph, k: int) -> int:
    """Count independent k-subsets directly on the adjacency structure."""
    gg = to_general(g) if isinstance(g, MaxDeg2Graph) else g
    if k == 0:
        return 1
    if k > gg.n:
        return 0
    count = 0
    for sub in combinations(range(gg.n), k):
        mask = 0
        for v in sub:
            mask |= 1 << v
        if all(not (gg.adj[v] & mask) for v in sub):
            count += 1
    return count


# ---------------------------------------------------------------------------
# deck-equivalence surveys
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassMember:
    label: str
    connected: bool
    edges: tuple[tuple[int, int], ...] | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"label": self.label, "connected": self.connected}
        if self.edges is not None:
            out["edges"] = [list(e) for e in self.edges]
        return out


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of grouping one universe of graphs by their k-decks."""

    n: int
    k: int
    universe: str
    classes: tuple[tuple[ClassMember, ...], ...]
    all_groups: tuple[tuple[str, ...], ...]
    total_graphs: int

    @property
    def nontrivial_count(self) -> int:
        return len(self.classes)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "universe": self.universe,
            "total_graphs": self.total_graphs,
            "classes": [
                [m.to_json_dict() for m in cls] for cls in self.classes
            ],
        }


def _survey_rows(
    universe: str, k: int, payloads: Iterable
) -> list[tuple[str, bool, str, str, tuple[tuple[int, int], ...] | None]]:
    """Worker: (label, connected, deck-digest, deck-json, edges) per graph."""
    rows = []
    for payload in payloads:
        if universe == "maxdeg2":
            g = MaxDeg2Graph(payload)
            profile = deck_profile(g, k)
            label = g.to_spec() if g.components else "empty"
            connected = len(g.components) == 1
            edges = None
        else:
            g = GeneralGraph(payload[0], payload[1])
            profile = deck_profile_bruteforce(g, k)
            label = canonical_code(g).key
            connected = g.is_connected
            edges = tuple(g.edges())
        blob = profile.canonical_json()
        digest = hashlib.sha256(blob.encode()).hexdigest()
        rows.append((label, connected, digest, blob, edges))
    return rows


def _survey_chunk(args):
    universe, k, payloads = args
    return _survey_rows(universe, k, payloads)


def resolve_thread_count(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("DECKKIT_THREADS", "").strip()
        threads = int(env) if env.isdigit() and int(env) > 0 else 1
    if threads < 1:
        raise ValueError("thread count must be at least 1")
    return threads


def find_equivalence_classes(
    n: int,
    k: int,
    universe: str = "general",
    *,
    threads: int | None = None,
    allow_n9: bool = False,
) -> EquivalenceReport:
    """Group every n-vertex graph in the universe by its k-deck.

    Decks are fingerprinted by a digest of their canonical serialization;
    digest groups are then verified against the full serializations, so a
    hash collision can only ever split a group, never merge one.
    """
    threads = resolve_thread_count(threads)
    if universe == "maxdeg2":
        if n > 18:
            raise SizeLimitError(f"max-degree-2 surveys support n <= 18, got {n}")
        payloads = [g.components for g in enumerate_maxdeg2(n)]
    elif universe == "general":
        payloads = [(g.n, g.adj) for g in enumerate_general(n, allow_n9=allow_n9)]
    else:
        raise ValueError(f"unknown universe {universe!r}")

    if threads == 1 or len(payloads) < 64:
        rows = _survey_rows(universe, k, payloads)
    else:
        step = max(1, (len(payloads) + threads * 4 - 1) // (threads * 4))
        chunks = [
            (universe, k, payloads[i : i + step])
            for i in range(0, len(payloads), step)
        ]
        rows = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_survey_chunk, chunks):
                rows.extend(part)

    by_digest: dict[str, list] = {}
    for row in rows:
        by_digest.setdefault(row[2], []).append(row)
    groups: list[list] = []
    for bucket in by_digest.values():
        by_blob: dict[str, list] = {}
        for row in bucket:
            by_blob.setdefault(row[3], []).append(row)
        groups.extend(by_blob.values())

    for group in groups:
        group.sort(key=lambda row: row[0])
    groups.sort(key=lambda g: (-len(g), g[0][0]))

    classes = tuple(
        tuple(ClassMember(label, conn, edges) for label, conn, _, _, edges in g)
        for g in groups
        if len(g) >= 2
    )
    all_groups = tuple(tuple(row[0] for row in g) for g in groups)
    return EquivalenceReport(n, k, universe, classes, all_groups, len(rows))


# ---------------------------------------------------------------------------
# independent-set sweeps over 2-regular graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StanleyReport:
    """All 2-regular graphs on n vertices with cycles longer than k."""

    n: int
    k: int
    members: tuple[str, ...]
    decks_all_equal: bool
    common_independent_count: int | None
    closed_form_count: int | None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "members": list(self.members),
            "decks_all_equal": self.decks_all_equal,
            "common_independent_count": self.common_independent_count,
            "closed_form_count": self.closed_form_count,
        }


def _cycle_partitions(total: int, min_part: int) -> Iterable[tuple[int, ...]]:
    def rec(remaining: int, max_part: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, max_part), min_part - 1, -1):
            for rest in rec(remaining - first, first):
                yield (first, *rest)

    yield from rec(total, total)


def cycle_count_closed_form(n: int, k: int) -> int:
    """Independent k-subsets of an n-cycle: n/(n-k) * C(n-k, k), exactly."""
    if k == 0:
        return 1
    if not 0 < k < n:
        raise ValueError(f"the closed form needs 0 <= k < n, got k={k}, n={n}")
    numer = n * comb(n - k, k)
    q, r = divmod(numer, n - k)
    if r:
        raise AssertionError(f"closed form is not integral at n={n}, k={k}")
    return q


def stanley_sweep(n: int, k: int) -> StanleyReport:
    """Check that cycle structure beyond length k is invisible to the k-deck.

    Enumerates every union of cycles each longer than k covering n vertices,
    requires all their k-decks (hence independent-set counts) to agree, and
    compares the common count with the single-cycle closed form.
    """
    if n > MAX_STANLEY_VERTICES or k > MAX_STANLEY_ORDER:
        raise SizeLimitError(
            f"sweeps support n <= {MAX_STANLEY_VERTICES}, k <= {MAX_STANLEY_ORDER}"
        )
    min_cycle = max(3, k + 1)
    graphs = [
        MaxDeg2Graph(tuple((CYCLE, p) for p in parts))
        for parts in _cycle_partitions(n, min_cycle)
    ]
    members = tuple(g.to_spec() for g in graphs)
    if not graphs:
        return StanleyReport(n, k, members, True, None, None)
    decks = [deck_profile(g, k) for g in graphs]
    all_equal = all(d == decks[0] for d in decks[1:])
    singles_key = card_key(MaxDeg2Graph(((PATH, 1),) * k)) if k else EMPTY_CARD
    common = decks[0].get(singles_key) if all_equal else None
    closed = cycle_count_closed_form(n, k) if 0 < k < n else (1 if k == 0 else None)
    return StanleyReport(n, k, members, all_equal, common, closed)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

PATH_FIXTURE_MAX_N = 12
CYCLE_FIXTURE_MAX_M = 12
FIXTURE_MAX_J = 6


def _dump_json(payload, filename: str) -> tuple[str, int]:
    blob = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    data = blob.encode()
    with open(filename, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest(), len(data)


def fixture_dump(out_dir: str, scope: str = "all") -> dict:
    """Regenerate the committed oracle fixtures; returns the manifest.

    Scopes: ``cards`` (path/cycle card-count tables), ``decks`` (all
    5-vertex general graphs with their 3-decks), ``all``.  Output is
    byte-stable: dictionaries are fully sorted and counts are plain ints
    well inside JSON's safe range.
    """
    if scope not in ("cards", "decks", "all"):
        raise ValueError(f"unknown fixture scope {scope!r}")
    os.makedirs(out_dir, exist_ok=True)
    files: dict[str, dict] = {}

    if scope in ("cards", "all"):
        path_table = {
            str(n): {
                str(j): path_card_table(n, j)
                for j in range(0, min(n, FIXTURE_MAX_J) + 1)
            }
            for n in range(1, PATH_FIXTURE_MAX_N + 1)
        }
        digest, size = _dump_json(
            path_table, os.path.join(out_dir, "path_card_counts.json")
        )
        files["path_card_counts.json"] = {"sha256": digest, "bytes": size}

        cycle_table = {
            str(m): {
                str(j): cycle_card_table(m, j)
                for j in range(0, min(m, FIXTURE_MAX_J) + 1)
            }
            for m in range(3, CYCLE_FIXTURE_MAX_M + 1)
        }
        digest, size = _dump_json(
            cycle_table, os.path.join(out_dir, "cycle_card_counts.json")
        )
        files["cycle_card_counts.json"] = {"sha256": digest, "bytes": size}

    if scope in ("decks", "all"):
        entries = []
        for g in enumerate_general(5):
            profile = deck_profile_bruteforce(g, 3)
            entries.append(
                {
                    "graph": canonical_code(g).key,
                    "edges": [list(e) for e in g.edges()],
                    "deck": {key: c for key, c in profile.sorted_items()},
                }
            )
        entries.sort(key=lambda e: e["graph"])
        digest, size = _dump_json(
            entries, os.path.join(out_dir, "general_decks_n5_k3.json")
        )
        files["general_decks_n5_k3.json"] = {"sha256": digest, "bytes": size}

    manifest = {
        "scope": scope,
        "parameters": {
            "path_card_counts": {"max_n": PATH_FIXTURE_MAX_N, "max_j": FIXTURE_MAX_J},
            "cycle_card_counts": {"max_m": CYCLE_FIXTURE_MAX_M, "max_j": FIXTURE_MAX_J},
            "general_decks": {"n": 5, "k": 3},
        },
        "files": files,
    }
    _dump_json(manifest, os.path.join(out_dir, "manifest.json"))
    return manifest

"""Graph models for deck computations.

Two universes are supported:

* ``MaxDeg2Graph``: graphs with maximum degree at most 2, i.e. disjoint
  unions of paths and cycles.  These are stored structurally as a multiset
  of components, so isomorphism is plain equality and graphs of dozens of
  vertices stay cheap.

* ``GeneralGraph``: arbitrary small graphs with bitmask adjacency rows,
  used for brute-force ground truth and for exhaustive isomorphism-class
  enumeration.

Canonical forms for general graphs are exact: the code is the
lexicographically minimal column-wise adjacency encoding over all vertex
orderings, found by a depth-first search that considers every ordering
(with sound pruning, never a heuristic equivalence).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

CYCLE = "C"
PATH = "P"

Component = tuple[str, int]

# Bitmask adjacency stays practical well past 16 vertices; the cap mostly
# guards against accidental huge inputs.  Canonical codes use factorial
# search and are limited much harder.
MAX_GENERAL_VERTICES = 64
MAX_CANON_VERTICES = 10
MAX_TO_GENERAL_VERTICES = 16
MAX_ENUM_VERTICES = 8  # 9 available behind an explicit opt-in
_SMALL_TABLE_MAX = 5


class GraphSpecError(ValueError):
    """Malformed graph spec text; carries the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class SizeLimitError(ValueError):
    """An operation was asked to exceed its supported size."""


def component_order_key(comp: Component) -> tuple[int, int]:
    """Sort key for the canonical component order.

    Components are ordered by decreasing vertex count, cycles before paths
    on ties.
    """
    kind, size = comp
    return (-size, 0 if kind == CYCLE else 1)


def _validate_component(comp: Component) -> None:
    if not (isinstance(comp, tuple) and len(comp) == 2):
        raise ValueError(f"component must be a (kind, size) pair, got {comp!r}")
    kind, size = comp
    if kind == CYCLE:
        if size < 3:
            raise ValueError(f"cycle components need at least 3 vertices, got {size}")
    elif kind == PATH:
        if size < 1:
            raise ValueError(f"path components need at least 1 vertex, got {size}")
    else:
        raise ValueError(f"unknown component kind {kind!r}")


@dataclass(frozen=True, order=True)
class MaxDeg2Graph:
    """A disjoint union of paths and cycles, as a canonically sorted multiset."""

    components: tuple[Component, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(sorted(self.components, key=component_order_key))
        for comp in comps:
            _validate_component(comp)
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return sum(size for _, size in self.components)

    @property
    def edge_count(self) -> int:
        return sum(size if kind == CYCLE else size - 1 for kind, size in self.components)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def max_degree(self) -> int:
        deg = 0
        for kind, size in self.components:
            if kind == CYCLE or size >= 3:
                return 2
            if size == 2:
                deg = max(deg, 1)
        return deg

    def count(self, kind: str, size: int) -> int:
        return self.components.count((kind, size))

    def has(self, kind: str, size: int) -> bool:
        return (kind, size) in self.components

    def degree_list(self) -> tuple[int, ...]:
        degs: list[int] = []
        for kind, size in self.components:
            if kind == CYCLE:
                degs.extend([2] * size)
            elif size == 1:
                degs.append(0)
            else:
                degs.extend([1, 1] + [2] * (size - 2))
        return tuple(sorted(degs))

    def to_spec(self) -> str:
        """Render as spec text, e.g. ``2C5+P3+3P1``.  Inverse of parse_spec."""
        parts = []
        i = 0
        comps = self.components
        while i < len(comps):
            j = i
            while j < len(comps) and comps[j] == comps[i]:
                j += 1
            kind, size = comps[i]
            mult = j - i
            prefix = str(mult) if mult > 1 else ""
            parts.append(f"{prefix}{kind}{size}")
            i = j
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_spec()

    def __add__(self, other: "MaxDeg2Graph") -> "MaxDeg2Graph":
        return MaxDeg2Graph(self.components + other.components)


def path(size: int) -> MaxDeg2Graph:
    return MaxDeg2Graph(((PATH, size),))


def cycle(size: int) -> MaxDeg2Graph:
    return MaxDeg2Graph(((CYCLE, size),))


def empty_graph() -> MaxDeg2Graph:
    return MaxDeg2Graph(())


def parse_spec(text: str) -> MaxDeg2Graph:
    """Parse a graph spec like ``2C5+P3+3P1``.

    Grammar: terms joined by '+', each term ``[multiplicity]('C'|'P')length``
    with multiplicity >= 1, cycle length >= 3, path length >= 1.  Whitespace
    between tokens is ignored.  Raises GraphSpecError with the character
    position of the problem.
    """
    comps: list[Component] = []
    i = 0
    n = len(text)

    def skip_ws(pos: int) -> int:
        while pos < n and text[pos].isspace():
            pos += 1
        return pos

    def read_int(pos: int) -> tuple[int | None, int]:
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            return None, pos
        return int(text[start:pos]), pos

    i = skip_ws(i)
    if i >= n:
        raise GraphSpecError("empty graph spec", i)
    while True:
        term_start = i
        mult, i = read_int(i)
        i = skip_ws(i)
        if mult is not None and mult < 1:
            raise GraphSpecError("multiplicity must be at least 1", term_start)
        if i >= n or text[i] not in (CYCLE, PATH):
            raise GraphSpecError("expected 'C' or 'P'", i)
        kind = text[i]
        i += 1
        size_start = i
        size, i = read_int(i)
        if size is None:
            raise GraphSpecError("expected a length after the component kind", i)
        if kind == CYCLE and size < 3:
            raise GraphSpecError("cycle length must be at least 3", size_start)
        if kind == PATH and size < 1:
            raise GraphSpecError("path length must be at least 1", size_start)
        comps.extend([(kind, size)] * (mult or 1))
        i = skip_ws(i)
        if i >= n:
            break
        if text[i] != "+":
            raise GraphSpecError("expected '+' between terms", i)
        i = skip_ws(i + 1)
        if i >= n:
            raise GraphSpecError("dangling '+' at end of spec", i)
    return MaxDeg2Graph(tuple(comps))


# ---------------------------------------------------------------------------
# general graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralGraph:
    """A small simple graph; ``adj[v]`` is the neighbor bitmask of vertex v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GENERAL_VERTICES:
            raise SizeLimitError(
                f"general graphs support 1..{MAX_GENERAL_VERTICES} vertices, got {self.n}"
            )
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count must equal the vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} references vertices out of range")
            if (row >> v) & 1:
                raise ValueError(f"vertex {v} has a self-loop")
        for v, row in enumerate(self.adj):
            m = row
            while m:
                b = m & -m
                w = b.bit_length() - 1
                m ^= b
                if not (self.adj[w] >> v) & 1:
                    raise ValueError(f"adjacency is not symmetric between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "GeneralGraph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if (rows[u] >> v) & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v, row in enumerate(self.adj):
            m = row >> (v + 1) << (v + 1)
            while m:
                b = m & -m
                w = b.bit_length() - 1
                m ^= b
                out.append((v, w))
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree_list(self) -> tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.adj))

    @property
    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        full = (1 << self.n) - 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                v = b.bit_length() - 1
                m ^= b
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
            if seen == full:
                return True
        return seen == full

    def relabeled(self, perm: tuple[int, ...]) -> "GeneralGraph":
        """Image under a permutation: vertex v goes to position perm[v]."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            m = row
            while m:
                b = m & -m
                w = b.bit_length() - 1
                m ^= b
                new |= 1 << perm[w]
            rows[perm[v]] = new
        return GeneralGraph(self.n, tuple(rows))

    def induced_bits(self, sub: tuple[int, ...]) -> int:
        """Labeled bit encoding of the subgraph induced by sub, in sub order."""
        bits = 0
        pos = 0
        adj = self.adj
        for j in range(1, len(sub)):
            aj = adj[sub[j]]
            for i in range(j - 1, -1, -1):
                if (aj >> sub[i]) & 1:
                    bits |= 1 << pos
                pos += 1
        return bits


def disjoint_union(a: GeneralGraph, b: GeneralGraph) -> GeneralGraph:
    rows = list(a.adj) + [row << a.n for row in b.adj]
    return GeneralGraph(a.n + b.n, tuple(rows))


def complete_graph(n: int) -> GeneralGraph:
    full = (1 << n) - 1
    return GeneralGraph(n, tuple(full ^ (1 << v) for v in range(n)))


def star_forest(stars: Iterable[tuple[int, int]]) -> GeneralGraph:
    """Disjoint union of stars, given as (leaf_count, multiplicity) pairs.

    A star with leaf count r has r+1 vertices (r = 0 gives an isolated
    vertex).
    """
    rows: list[int] = []
    base = 0
    for leaves, mult in stars:
        if leaves < 0 or mult < 0:
            raise ValueError("leaf counts and multiplicities must be nonnegative")
        for _ in range(mult):
            center = base
            rows.append(0)
            for i in range(leaves):
                leaf = base + 1 + i
                rows.append(1 << center)
                rows[center] |= 1 << leaf
            base += leaves + 1
    return GeneralGraph(base, tuple(rows))


def to_general(g: MaxDeg2Graph) -> GeneralGraph:
    """Concrete adjacency form, components laid out in canonical order."""
    if g.n == 0:
        raise ValueError("cannot build a general graph on 0 vertices")
    if g.n > MAX_TO_GENERAL_VERTICES:
        raise SizeLimitError(
            f"to_general supports up to {MAX_TO_GENERAL_VERTICES} vertices, got {g.n}"
        )
    edges: list[tuple[int, int]] = []
    base = 0
    for kind, size in g.components:
        edges.extend((base + i, base + i + 1) for i in range(size - 1))
        if kind == CYCLE:
            edges.append((base + size - 1, base))
        base += size
    return GeneralGraph(g.n, tuple(0 for _ in range(g.n))) if not edges else GeneralGraph.from_edges(g.n, edges)


def degree_list(g: MaxDeg2Graph | GeneralGraph) -> tuple[int, ...]:
    return g.degree_list()


def to_maxdeg2(g: GeneralGraph) -> MaxDeg2Graph:
    """Structural form of a general graph whose maximum degree is at most 2.

    Raises ValueError when some vertex has three or more neighbors.
    """
    if any(row.bit_count() > 2 for row in g.adj):
        raise ValueError("graph has a vertex of degree 3 or more")
    comps: list[Component] = []
    unseen = (1 << g.n) - 1
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                v = b.bit_length() - 1
                m ^= b
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        size = seen.bit_count()
        edges = sum((g.adj[v] & seen).bit_count() for v in range(g.n) if (seen >> v) & 1) // 2
        comps.append((CYCLE, size) if edges == size else (PATH, size))
        unseen &= ~seen
    return MaxDeg2Graph(tuple(comps))


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-invariant identifier: minimal packed column encoding."""

    n: int
    bits: int

    @property
    def key(self) -> str:
        return f"g{self.n}:{self.bits:x}"


def _pack_columns(cols: list[int]) -> int:
    bits = 0
    for i, c in enumerate(cols):
        bits |= c << (i * (i + 1) // 2)
    return bits


def _unpack_adj(n: int, bits: int) -> tuple[int, ...]:
    rows = [0] * n
    for j in range(1, n):
        c = (bits >> (j * (j - 1) // 2)) & ((1 << j) - 1)
        for i in range(j):
            if (c >> (j - 1 - i)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return tuple(rows)


def _min_columns(n: int, adj: tuple[int, ...]) -> list[int]:
    """Minimal column encoding over all vertex orderings.

    Column j holds the adjacency bits between the vertex placed at position
    j and the previously placed vertices, earlier positions in higher bits;
    the column sequence is compared lexicographically.  The search is
    exhaustive over orderings, with two sound prunings: branches whose
    prefix already exceeds the best known code, and candidates that are
    interchangeable with an already-tried sibling (equal adjacency to the
    placed sequence and to the remaining vertices, which yields an
    automorphism swapping the two).
    """
    if n <= 1:
        return []
    best: list[int] | None = None
    best_ver = 0

    def dfs(p: int, unused: int, colvals: list[int], cols: list[int]) -> None:
        nonlocal best, best_ver
        if p == n:
            best = cols.copy()
            best_ver += 1
            return
        cands = []
        m = unused
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            cands.append((colvals[v], v))
        cands.sort()
        tight = best is not None and (p < 2 or cols == best[: p - 1])
        ver = best_ver
        tried: list[tuple[int, int]] = []
        for c, v in cands:
            if best_ver != ver:
                # a better code was completed below us; our prefix is its prefix
                ver = best_ver
                tight = True
            if tight and p >= 1 and c > best[p - 1]:  # type: ignore[index]
                break
            skip = False
            for c2, u in tried:
                if c2 == c:
                    rest = unused & ~(1 << u) & ~(1 << v)
                    if (adj[u] & rest) == (adj[v] & rest):
                        skip = True
                        break
            if skip:
                continue
            tried.append((c, v))
            new_unused = unused ^ (1 << v)
            new_colvals = colvals.copy()
            m2 = new_unused
            while m2:
                b2 = m2 & -m2
                w = b2.bit_length() - 1
                m2 ^= b2
                new_colvals[w] = (colvals[w] << 1) | ((adj[w] >> v) & 1)
            if p >= 1:
                cols.append(c)
                dfs(p + 1, new_unused, new_colvals, cols)
                cols.pop()
            else:
                dfs(1, new_unused, new_colvals, cols)

    dfs(0, (1 << n) - 1, [0] * n, [])
    assert best is not None
    return best


@lru_cache(maxsize=8)
def _small_canon_table(n: int) -> tuple[int, ...]:
    size = 1 << (n * (n - 1) // 2)
    table = [0] * size
    for lab in range(size):
        table[lab] = _pack_columns(_min_columns(n, _unpack_adj(n, lab)))
    return tuple(table)


_canon_memo: dict[tuple[int, int], int] = {}


def canonical_bits(n: int, labeled_bits: int) -> int:
    """Canonical packed code for a labeled bit encoding of an n-vertex graph."""
    if n > MAX_CANON_VERTICES:
        raise SizeLimitError(
            f"canonical codes support up to {MAX_CANON_VERTICES} vertices, got {n}"
        )
    if n <= _SMALL_TABLE_MAX:
        return _small_canon_table(n)[labeled_bits]
    key = (n, labeled_bits)
    out = _canon_memo.get(key)
    if out is None:
        out = _pack_columns(_min_columns(n, _unpack_adj(n, labeled_bits)))
        _canon_memo[key] = out
    return out


def canonical_code(g: GeneralGraph) -> CanonicalCode:
    if g.n > MAX_CANON_VERTICES:
        raise SizeLimitError(
            f"canonical codes support up to {MAX_CANON_VERTICES} vertices, got {g.n}"
        )
    lab = g.induced_bits(tuple(range(g.n)))
    return CanonicalCode(g.n, canonical_bits(g.n, lab))


def code_to_graph(code: CanonicalCode) -> GeneralGraph:
    return GeneralGraph(code.n, _unpack_adj(code.n, code.bits))


def _min_columns_bruteforce(n: int, adj: tuple[int, ...]) -> list[int]:
    """Reference implementation: scan every permutation.  Test oracle only."""
    best: list[int] | None = None
    for perm in permutations(range(n)):
        cols = []
        for j in range(1, n):
            c = 0
            aj = adj[perm[j]]
            for i in range(j):
                c = (c << 1) | ((aj >> perm[i]) & 1)
            cols.append(c)
        if best is None or cols < best:
            best = cols
    return best or []


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def enumerate_maxdeg2(n: int) -> Iterator[MaxDeg2Graph]:
    """Every max-degree-2 graph on n vertices, exactly once.

    Components are chosen in non-increasing canonical order, which makes
    each multiset appear once.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")

    def rec(remaining: int, bound: tuple[int, int]) -> Iterator[tuple[Component, ...]]:
        if remaining == 0:
            yield ()
            return
        max_size, max_rank = bound
        for size in range(min(remaining, max_size), 0, -1):
            ranks = ([0] if size >= 3 else []) + [1]
            for rank in ranks:
                if size == max_size and rank < max_rank:
                    continue
                comp: Component = (CYCLE, size) if rank == 0 else (PATH, size)
                for rest in rec(remaining - size, (size, rank)):
                    yield (comp, *rest)

    for comps in rec(n, (n, 0)):
        yield MaxDeg2Graph(comps)


@lru_cache(maxsize=None)
def _general_codes(n: int, max_edges: int | None) -> tuple[int, ...]:
    """Canonical codes of all n-vertex graphs, optionally capped by edge count.

    Builds on the (n-1)-vertex classes by attaching one new vertex with
    every possible neighborhood, then dedups by canonical code.  Deleting a
    vertex never adds edges, so the edge-capped recursion is still complete
    for its slice.
    """
    if n == 1:
        return (0,)
    out: set[int] = set()
    for prev_bits in _general_codes(n - 1, max_edges):
        prev = code_to_graph(CanonicalCode(n - 1, prev_bits))
        budget = None if max_edges is None else max_edges - prev.edge_count
        for s in range(1 << (n - 1)):
            if budget is not None and s.bit_count() > budget:
                continue
            adj = tuple(
                row | (((s >> v) & 1) << (n - 1)) for v, row in enumerate(prev.adj)
            ) + (s,)
            out.add(_pack_columns(_min_columns(n, adj)))
    return tuple(sorted(out))


def enumerate_general(
    n: int, *, allow_n9: bool = False, max_edges: int | None = None
) -> Iterator[GeneralGraph]:
    """Every isomorphism class of n-vertex graphs, exactly once.

    Capped at n <= 8 by default; n = 9 (274k classes, several minutes) needs
    allow_n9=True.  With max_edges set, yields exactly the classes with at
    most that many edges.
    """
    if n < 1:
        raise ValueError("vertex count must be at least 1")
    limit = 9 if allow_n9 else MAX_ENUM_VERTICES
    if n > limit:
        raise SizeLimitError(
            f"enumeration supports up to {limit} vertices here, got {n}"
        )
    for bits in _general_codes(n, max_edges):
        yield code_to_graph(CanonicalCode(n, bits))


# ---------------------------------------------------------------------------
# edge-list files
# ---------------------------------------------------------------------------


def parse_edge_text(text: str, source: str = "<edge data>") -> GeneralGraph:
    """Parse the edge-list format: a header line ``n m`` then m lines ``u v``."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError(f"{source}: empty edge-list input")
    head = lines[0].split()
    if len(head) != 2 or not all(tok.isdigit() for tok in head):
        raise ValueError(f"{source}: header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(
            f"{source}: header promises {m} edges but {len(lines) - 1} lines follow"
        )
    edges = []
    for idx, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise ValueError(f"{source}: line {idx}: expected 'u v', got {ln!r}")
        edges.append((int(toks[0]), int(toks[1])))
    try:
        return GeneralGraph.from_edges(n, edges)
    except ValueError as exc:
        raise ValueError(f"{source}: {exc}") from exc


def read_edge_file(filename: str) -> GeneralGraph:
    with open(filename, "r", encoding="utf-8") as fh:
        return parse_edge_text(fh.read(), source=filename)

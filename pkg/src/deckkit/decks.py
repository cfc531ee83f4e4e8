"""Deck computation: multisets of induced k-vertex subgraphs.

A deck profile maps card keys to counts.  For max-degree-2 host graphs every
card is itself a disjoint union of paths and cycles and gets a structural
key like ``C5+P3+P1^2``; cards of general graphs get an opaque canonical
key like ``g3:5``.  Totals always equal C(n, k).

The closed-form per-component card counts here are the fast path; the
subset-enumeration oracle lives in deckkit.oracle and the two are tested
against each other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .graphs import (
    CYCLE,
    PATH,
    Component,
    GeneralGraph,
    MaxDeg2Graph,
    SizeLimitError,
    canonical_bits,
    to_general,
)

EMPTY_CARD = "empty"

# card keys beginning with "g" are canonical general-graph codes; everything
# else is the structural run-length form.
_GENERAL_PREFIX = "g"


class DeckConsistencyError(ValueError):
    """A deck operation produced evidence that the input is not a real deck."""


def card_key(card: MaxDeg2Graph) -> str:
    """Structural key for a card: run-length component list, e.g. ``C5+P1^2``."""
    if not card.components:
        return EMPTY_CARD
    parts = []
    comps = card.components
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        kind, size = comps[i]
        mult = j - i
        suffix = f"^{mult}" if mult > 1 else ""
        parts.append(f"{kind}{size}{suffix}")
        i = j
    return "+".join(parts)


def parse_card_key(key: str) -> MaxDeg2Graph:
    if key == EMPTY_CARD:
        return MaxDeg2Graph(())
    comps: list[Component] = []
    for part in key.split("+"):
        if not part or part[0] not in (CYCLE, PATH):
            raise ValueError(f"bad card key component {part!r} in {key!r}")
        kind = part[0]
        body = part[1:]
        mult = 1
        if "^" in body:
            size_text, _, mult_text = body.partition("^")
            if not (size_text.isdigit() and mult_text.isdigit()):
                raise ValueError(f"bad card key component {part!r} in {key!r}")
            mult = int(mult_text)
            if mult < 2:
                raise ValueError(f"bad multiplicity in card key component {part!r}")
        else:
            size_text = body
            if not size_text.isdigit():
                raise ValueError(f"bad card key component {part!r} in {key!r}")
        comps.extend([(kind, int(size_text))] * mult)
    return MaxDeg2Graph(tuple(comps))


def general_card_key(k: int, canonical: int) -> str:
    return f"{_GENERAL_PREFIX}{k}:{canonical:x}"


def is_general_key(key: str) -> bool:
    return key.startswith(_GENERAL_PREFIX) and ":" in key


@dataclass(frozen=True)
class DeckProfile:
    """The k-deck of an n-vertex graph: card key -> multiplicity."""

    n: int
    k: int
    counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        clean = {key: c for key, c in self.counts.items() if c}
        for key, c in clean.items():
            if c < 0:
                raise ValueError(f"negative count for card {key!r}")
        object.__setattr__(self, "counts", clean)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def get(self, key: str) -> int:
        return self.counts.get(key, 0)

    def sorted_items(self) -> list[tuple[str, int]]:
        return sorted(self.counts.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeckProfile):
            return NotImplemented
        return (self.n, self.k, dict(self.counts)) == (
            other.n,
            other.k,
            dict(other.counts),
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, frozenset(self.counts.items())))

    def canonical_json(self) -> str:
        """Byte-stable serialization; counts as strings so huge values survive
        any JSON reader."""
        payload = {
            "n": self.n,
            "k": self.k,
            "counts": {key: str(c) for key, c in self.sorted_items()},
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "counts": {key: str(c) for key, c in self.sorted_items()},
        }

    @classmethod
    def from_json_dict(cls, payload: Mapping) -> "DeckProfile":
        try:
            n = int(payload["n"])
            k = int(payload["k"])
            raw = payload["counts"]
            counts = {str(key): int(value) for key, value in raw.items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed deck payload: {exc}") from exc
        return cls(n, k, counts)


def write_deck(profile: DeckProfile, filename: str) -> None:
    with open(filename, "w", encoding="utf-8") as fh:
        json.dump(profile.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_deck(filename: str) -> DeckProfile:
    with open(filename, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return DeckProfile.from_json_dict(payload)


# ---------------------------------------------------------------------------
# per-component card counts (closed forms)
# ---------------------------------------------------------------------------


def _partitions(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of total into parts >= 1, non-increasing order."""
    if max_part is None or max_part > total:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first, *rest)


def _multiplicity_factor(parts: tuple[int, ...]) -> int:
    """Number of distinct orderings of the parts: p! / prod(mult_i!)."""
    out = 1
    total = len(parts)
    for i in range(2, total + 1):
        out *= i
    i = 0
    while i < total:
        j = i
        while j < total and parts[j] == parts[i]:
            j += 1
        for f in range(2, j - i + 1):
            out //= f
        i = j
    return out


@lru_cache(maxsize=4096)
def _path_cards(n: int, j: int) -> tuple[tuple[tuple[Component, ...], int], ...]:
    """Cards with j vertices drawn from a path on n vertices.

    Picking j vertices from a path leaves a card that is a union of subpaths;
    a card with parts (a_1 >= ... >= a_p) arises in
    (orderings of the parts) * C(n - j + 1, p) ways: the p occupied runs and
    the gaps between and around them are a composition of n with p parts
    fixed and p+1 nonnegative gaps whose interior ones are positive.
    """
    if j == 0:
        return (((), 1),)
    out = []
    for parts in _partitions(j):
        p = len(parts)
        ways = _multiplicity_factor(parts) * comb(n - j + 1, p)
        if ways:
            comps = tuple((PATH, a) for a in parts)
            out.append((comps, ways))
    return tuple(out)


@lru_cache(maxsize=4096)
def _cycle_cards(m: int, j: int) -> tuple[tuple[tuple[Component, ...], int], ...]:
    """Cards with j vertices drawn from a cycle on m vertices.

    For 0 < j < m every card is a union of subpaths; a card with parts
    (a_1 >= ... >= a_p) arises in m * (p-1)! * C(m-j-1, p-1) / prod(mult_i!)
    ways: anchor one run, arrange the rest around the cycle, and distribute
    the m - j unpicked vertices as p positive gaps.  j = m gives the whole
    cycle once.
    """
    if j == 0:
        return (((), 1),)
    if j == m:
        return ((((CYCLE, m),), 1),)
    out = []
    for parts in _partitions(j):
        p = len(parts)
        if p > m - j:
            continue  # needs p positive gaps
        numer = m * _multiplicity_factor(parts) * comb(m - j - 1, p - 1)
        ways, rem = divmod(numer, p)
        assert rem == 0, (m, j, parts)
        if ways:
            comps = tuple((PATH, a) for a in parts)
            out.append((comps, ways))
    return tuple(out)


def path_card_counts(n: int, j: int) -> dict[str, int]:
    """Card key -> count for j-vertex cards of a path on n vertices."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    if j == 0:
        return {EMPTY_CARD: 1}
    return {
        card_key(MaxDeg2Graph(comps)): ways for comps, ways in _path_cards(n, j)
    }


def cycle_card_counts(m: int, j: int) -> dict[str, int]:
    """Card key -> count for j-vertex cards of a cycle on m vertices."""
    if m < 3:
        raise ValueError(f"cycles need at least 3 vertices, got {m}")
    if not 0 <= j <= m:
        raise ValueError(f"need 0 <= j <= m, got j={j}, m={m}")
    if j == 0:
        return {EMPTY_CARD: 1}
    return {
        card_key(MaxDeg2Graph(comps)): ways for comps, ways in _cycle_cards(m, j)
    }


def _component_cards(comp: Component, j: int) -> tuple[tuple[tuple[Component, ...], int], ...]:
    kind, size = comp
    if kind == CYCLE:
        return _cycle_cards(size, j)
    return _path_cards(size, j)


# ---------------------------------------------------------------------------
# whole-graph decks
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16384)
def _deck_profile_cached(components: tuple[Component, ...], k: int) -> DeckProfile:
    n = sum(size for _, size in components)
    # DP over components: state = vertices used so far -> card multiset -> ways
    state: dict[int, dict[tuple[Component, ...], int]] = {0: {(): 1}}
    for comp in components:
        _, size = comp
        new_state: dict[int, dict[tuple[Component, ...], int]] = {}
        for used, cards in state.items():
            for j in range(0, min(size, k - used) + 1):
                for comp_cards, ways in _component_cards(comp, j):
                    bucket = new_state.setdefault(used + j, {})
                    for partial, count in cards.items():
                        merged = tuple(
                            sorted(partial + comp_cards, key=lambda c: (-c[1], c[0] != CYCLE))
                        )
                        bucket[merged] = bucket.get(merged, 0) + count * ways
        state = new_state
    final = state.get(k, {})
    counts = {
        card_key(MaxDeg2Graph(comps)): count for comps, count in final.items()
    }
    profile = DeckProfile(n, k, counts)
    assert profile.total == comb(n, k), (components, k, profile.total)
    return profile


def deck_profile(g: MaxDeg2Graph, k: int) -> DeckProfile:
    """The k-deck of a max-degree-2 graph, via per-component closed forms."""
    if not 0 <= k <= g.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={g.n}")
    return _deck_profile_cached(g.components, k)


def deck_profile_bruteforce(g: GeneralGraph, k: int) -> DeckProfile:
    """The k-deck of a general graph by enumerating every vertex subset.

    Cards are tallied by labeled bit pattern first and only the distinct
    patterns are canonicalized, which keeps the expensive step off the
    C(n, k) critical path.
    """
    if not 0 <= k <= g.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={g.n}")
    if k == 0:
        return DeckProfile(g.n, 0, {EMPTY_CARD: 1})
    tally: dict[int, int] = {}
    adj = g.adj
    for sub in combinations(range(g.n), k):
        bits = 0
        pos = 0
        for jj in range(1, k):
            aj = adj[sub[jj]]
            for ii in range(jj - 1, -1, -1):
                if (aj >> sub[ii]) & 1:
                    bits |= 1 << pos
                pos += 1
        tally[bits] = tally.get(bits, 0) + 1
    counts: dict[str, int] = {}
    for bits, count in tally.items():
        key = general_card_key(k, canonical_bits(k, bits))
        counts[key] = counts.get(key, 0) + count
    profile = DeckProfile(g.n, k, counts)
    assert profile.total == comb(g.n, k)
    return profile


@lru_cache(maxsize=65536)
def _linear_key_to_general(key: str, k: int) -> str:
    """Structural card key -> equivalent general canonical key."""
    card = parse_card_key(key)
    if card.n != k:
        raise ValueError(f"card {key!r} has {card.n} vertices, expected {k}")
    if k == 0:
        return EMPTY_CARD
    host = to_general(card)
    lab = host.induced_bits(tuple(range(k)))
    return general_card_key(k, canonical_bits(k, lab))


def _normalize_keys(profile: DeckProfile) -> dict[str, int]:
    out: dict[str, int] = {}
    for key, count in profile.counts.items():
        if key == EMPTY_CARD or not is_general_key(key):
            key = _linear_key_to_general(key, profile.k) if profile.k else EMPTY_CARD
        out[key] = out.get(key, 0) + count
    return out


def decks_equal(a: DeckProfile, b: DeckProfile) -> bool:
    """Deck equality across key styles (structural vs general canonical)."""
    if (a.n, a.k) != (b.n, b.k):
        return False
    if dict(a.counts) == dict(b.counts):
        return True
    a_has_general = any(is_general_key(key) for key in a.counts)
    b_has_general = any(is_general_key(key) for key in b.counts)
    if a_has_general == b_has_general:
        return False  # same key style, so plain comparison was decisive
    if a.k > 10:
        raise SizeLimitError(
            "cannot compare structural and general decks with cards over 10 vertices"
        )
    return _normalize_keys(a) == _normalize_keys(b)


# ---------------------------------------------------------------------------
# derived counts
# ---------------------------------------------------------------------------


def count_induced(host: MaxDeg2Graph, pattern: MaxDeg2Graph) -> int:
    """Number of vertex subsets of host inducing a copy of pattern."""
    return deck_profile(host, pattern.n).get(card_key(pattern))


def independent_set_count(g: MaxDeg2Graph, k: int) -> int:
    """Number of independent k-subsets, read off the k-deck."""
    if k == 0:
        return 1
    if k > g.n:
        return 0
    singles = MaxDeg2Graph(((PATH, 1),) * k)
    return count_induced(g, singles)


def restrict_deck(profile: DeckProfile, k: int) -> DeckProfile:
    """Derive the k-deck from a (k+1)-deck (or any larger deck), exactly.

    Each k-subset of the host extends to exactly n - k subsets of size
    k + 1, so summing (copies of a small card inside each big card) over
    the big deck overcounts the small deck by a factor of n - k.  A
    non-integer division proves the input was not a genuine deck.
    """
    if not 0 <= k <= profile.k:
        raise ValueError(f"need 0 <= k <= deck order {profile.k}, got {k}")
    if k == profile.k:
        return profile
    if k == profile.k - 1:
        tallies: dict[str, int] = {}
        for key, count in profile.counts.items():
            if is_general_key(key):
                raise ValueError(
                    "restrict_deck only handles structural card keys"
                )
            card = parse_card_key(key)
            sub = deck_profile(card, k)
            for small_key, inside in sub.counts.items():
                tallies[small_key] = tallies.get(small_key, 0) + count * inside
        divisor = profile.n - k
        counts: dict[str, int] = {}
        for small_key, raw in tallies.items():
            q, r = divmod(raw, divisor)
            if r:
                raise DeckConsistencyError(
                    f"card counts for {small_key!r} are not divisible by "
                    f"{divisor}; the input is not a consistent deck"
                )
            counts[small_key] = q
        return DeckProfile(profile.n, k, counts)
    return restrict_deck(restrict_deck(profile, profile.k - 1), k)


def s_prime(n: int, forest: MaxDeg2Graph, h: int) -> int:
    """Induced copies of a path forest in P_n with vertex h isolated in the copy.

    Counts vertex subsets of the n-path that induce the given forest and
    contain position h (1-based from one end) as a run of length one, so
    the forest must have an isolated vertex for h to play.  Brute force
    on purpose: this is a low-volume diagnostic helper.
    """
    if any(kind == CYCLE for kind, _ in forest.components):
        raise ValueError("s_prime expects a union of paths")
    if not forest.has(PATH, 1):
        raise ValueError("the forest needs an isolated vertex for position h to play")
    if not 1 <= h <= n:
        raise ValueError(f"need 1 <= h <= n, got h={h}")
    k = forest.n
    target = card_key(forest)
    others = [v for v in range(1, n + 1) if v != h]
    out = 0
    for rest in combinations(others, k - 1):
        sub = tuple(sorted((h, *rest)))
        runs: list[int] = []
        run = 1
        for a, b in zip(sub, sub[1:]):
            if b == a + 1:
                run += 1
            else:
                runs.append(run)
                run = 1
        runs.append(run)
        if h - 1 in sub or h + 1 in sub:
            continue
        got = MaxDeg2Graph(tuple((PATH, r) for r in runs))
        if card_key(got) == target:
            out += 1
    return out

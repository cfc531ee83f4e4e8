"""Reconstruction machinery for max-degree-2 graphs.

Three engines live here:

* the closed-form reconstruction threshold: which deck order suffices to
  pin a graph down among all graphs, straight from its component sizes;

* ``reconstruct``: given a deck, recover the graph (or the full set of
  graphs) that produced it, preferring exact component analysis and
  falling back to an exhaustive universe search;

* witness-pair generators for every known family of non-isomorphic graphs
  sharing a deck, including the star forests and degree-3 impostors that
  live outside the max-degree-2 world.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable

from .decks import (
    DeckConsistencyError,
    DeckProfile,
    EMPTY_CARD,
    card_key,
    deck_profile,
    deck_profile_bruteforce,
    is_general_key,
    parse_card_key,
    restrict_deck,
)
from .graphs import (
    CYCLE,
    PATH,
    CanonicalCode,
    Component,
    GeneralGraph,
    MaxDeg2Graph,
    SizeLimitError,
    canonical_code,
    code_to_graph,
    cycle,
    disjoint_union,
    enumerate_general,
    enumerate_maxdeg2,
    path,
    star_forest,
    to_general,
    to_maxdeg2,
)

MAX_SEARCH_VERTICES = 18  # max-degree-2 universe searches
MAX_GENERAL_SEARCH = 8  # general universe searches; 9 behind a flag


# ---------------------------------------------------------------------------
# the reconstruction-threshold formula
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RhoReport:
    """Closed-form reconstruction threshold and the statistics behind it.

    ``largest`` and ``second`` are the sizes of the two biggest components
    (``second`` is 0 for connected graphs).  ``path_bonus`` is 1 when a
    path realizes the largest size; ``second_bonus`` in {0,1,2} encodes
    how a second component can be traded against the largest one.  The
    threshold is max(largest//2 + path_bonus, second + second_bonus), and
    ``rho`` equals it except for the exceptional family, where a degree-3
    graph shares the 3-deck and forces 4.

    ``below_proven_range`` flags graphs where the threshold came out
    under 3 despite maximum degree 2; the formula's derivation does not
    cover that corner (C3 is a genuine anomaly there) and search is the
    ground truth.
    """

    largest: int
    second: int
    path_bonus: int
    second_bonus: int
    threshold: int
    exceptional: bool
    rho: int
    below_proven_range: bool

    def to_json_dict(self) -> dict:
        return {
            "largest": self.largest,
            "second": self.second,
            "path_bonus": self.path_bonus,
            "second_bonus": self.second_bonus,
            "threshold": self.threshold,
            "exceptional": self.exceptional,
            "rho": self.rho,
            "below_proven_range": self.below_proven_range,
        }


def component_stats(g: MaxDeg2Graph) -> tuple[int, int, int, int]:
    """(largest, second, path_bonus, second_bonus) for the threshold formula.

    second_bonus cases are checked strictly in order: 2 when the second
    size trails the largest by more than one and a path of the second size
    exists; else 1 when any of the three tie/near-tie path conditions
    holds; else 0.
    """
    if not g.components:
        raise ValueError("the empty graph has no component statistics")
    sizes = [size for _, size in g.components]
    largest = sizes[0]
    second = sizes[1] if len(sizes) > 1 else 0
    path_bonus = 1 if g.has(PATH, largest) else 0
    if second and second < largest - 1 and g.has(PATH, second):
        second_bonus = 2
    elif second and (
        (second == largest - 1 and g.has(PATH, second))
        or (
            second < largest
            and second >= 2
            and g.has(PATH, second - 1)
            and not g.has(PATH, second)
        )
        or (second == largest and g.count(PATH, largest) >= 2)
    ):
        second_bonus = 1
    else:
        second_bonus = 0
    return largest, second, path_bonus, second_bonus


def is_exceptional(g: MaxDeg2Graph) -> bool:
    """Membership in the family with degree-3 twins at deck order 3.

    Needs an isolated vertex plus any of: a component on 5 or more
    vertices, a 4-cycle, both P4 and C3 present, or at least four
    triangles alongside at least four isolated vertices.
    """
    if not g.has(PATH, 1):
        return False
    if any(size >= 5 for _, size in g.components):
        return True
    if g.has(CYCLE, 4):
        return True
    if g.has(PATH, 4) and g.has(CYCLE, 3):
        return True
    return g.count(CYCLE, 3) >= 4 and g.count(PATH, 1) >= 4


def rho_report(g: MaxDeg2Graph) -> RhoReport:
    """Evaluate the reconstruction-threshold formula on one graph."""
    largest, second, path_bonus, second_bonus = component_stats(g)
    threshold = max(largest // 2 + path_bonus, second + second_bonus)
    exceptional = is_exceptional(g)
    rho = 4 if threshold == 3 and exceptional else threshold
    below = threshold <= 2 and g.max_degree == 2
    return RhoReport(
        largest=largest,
        second=second,
        path_bonus=path_bonus,
        second_bonus=second_bonus,
        threshold=threshold,
        exceptional=exceptional,
        rho=rho,
        below_proven_range=below,
    )


# ---------------------------------------------------------------------------
# ground-truth search
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _maxdeg2_universe(n: int) -> tuple[MaxDeg2Graph, ...]:
    return tuple(enumerate_maxdeg2(n))


@lru_cache(maxsize=None)
def _maxdeg2_class_sizes(n: int, k: int) -> dict[DeckProfile, int]:
    out: dict[DeckProfile, int] = {}
    for h in _maxdeg2_universe(n):
        d = deck_profile(h, k)
        out[d] = out.get(d, 0) + 1
    return out


@lru_cache(maxsize=200000)
def _brute_deck(g: GeneralGraph, k: int) -> DeckProfile:
    return deck_profile_bruteforce(g, k)


def rho_search(
    g: MaxDeg2Graph | GeneralGraph,
    universe: str = "maxdeg2",
    *,
    allow_n9: bool = False,
) -> int:
    """Least deck order whose deck no other same-order universe graph shares.

    The max-degree-2 universe runs on fast structural decks (n up to 18);
    the general universe runs on brute-force decks over every isomorphism
    class (n up to 8, or 9 with allow_n9).
    """
    if universe == "maxdeg2":
        if isinstance(g, GeneralGraph):
            g = to_maxdeg2(g)
        n = g.n
        if n > MAX_SEARCH_VERTICES:
            raise SizeLimitError(
                f"max-degree-2 searches support n <= {MAX_SEARCH_VERTICES}, got {n}"
            )
        if n == 0:
            return 0
        for k in range(1, n + 1):
            if _maxdeg2_class_sizes(n, k)[deck_profile(g, k)] == 1:
                return k
        raise AssertionError("the whole-graph deck always separates")
    if universe != "general":
        raise ValueError(f"unknown universe {universe!r}")
    gg = to_general(g) if isinstance(g, MaxDeg2Graph) else g
    n = gg.n
    limit = 9 if allow_n9 else MAX_GENERAL_SEARCH
    if n > limit:
        raise SizeLimitError(f"general searches support n <= {limit}, got {n}")
    if n == 1:
        return 1
    e = gg.edge_count
    own = canonical_code(gg)
    # Deck equality at any k >= 2 forces equal edge counts (restrict to the
    # 2-deck), so only same-size same-edge-count classes can ever collide.
    rivals = [
        h
        for h in enumerate_general(n, allow_n9=allow_n9, max_edges=e)
        if h.edge_count == e and canonical_code(h) != own
    ]
    for k in range(2, n + 1):
        mine = _brute_deck(gg, k)
        rivals = [h for h in rivals if _brute_deck(h, k) == mine]
        if not rivals:
            return k
    raise AssertionError("the whole-graph deck always separates")


# ---------------------------------------------------------------------------
# reconstruction from a deck
# ---------------------------------------------------------------------------

UNIQUE = "unique"
AMBIGUOUS = "ambiguous"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class ReconResult:
    outcome: str
    graphs: tuple[MaxDeg2Graph, ...] = ()
    method: str | None = None
    reason: str | None = None

    @property
    def is_unique(self) -> bool:
        return self.outcome == UNIQUE

    @property
    def graph(self) -> MaxDeg2Graph:
        if not self.is_unique:
            raise ValueError(f"no single graph: outcome is {self.outcome}")
        return self.graphs[0]

    def to_json_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "graphs": [g.to_spec() for g in self.graphs],
            "method": self.method,
            "reason": self.reason,
        }


def _inconsistent(reason: str) -> ReconResult:
    return ReconResult(INCONSISTENT, (), None, reason)


def _structural_cards(profile: DeckProfile) -> dict[MaxDeg2Graph, int]:
    """Parse every card key; general-coded cards must be max-degree-2."""
    cards: dict[MaxDeg2Graph, int] = {}
    for key, count in profile.counts.items():
        if key == EMPTY_CARD:
            card = MaxDeg2Graph(())
        elif is_general_key(key):
            prefix, _, hexpart = key.partition(":")
            card = to_maxdeg2(
                code_to_graph(CanonicalCode(int(prefix[1:]), int(hexpart, 16)))
            )
        else:
            card = parse_card_key(key)
        cards[card] = cards.get(card, 0) + count
    return cards


def _induced_paths(comp: Component, j: int) -> int:
    """Copies of the j-vertex path inside one larger component."""
    kind, size = comp
    if kind == CYCLE:
        return size if size > j else 0
    return size - j + 1 if size >= j else 0


def _component_analysis(
    norm: DeckProfile, n: int, k: int
) -> ReconResult | None:
    """Reconstruct by component-count bookkeeping; None when inapplicable.

    Sound under the max-degree-2 promise: every rule below is an exact
    consequence of the deck when the deck really came from such a graph,
    and the final re-derivation of the deck rejects anything else.
    """
    try:
        lower: dict[int, DeckProfile] = {}
        r = norm
        for j in range(k - 1, 0, -1):
            r = restrict_deck(r, j)
            lower[j] = r
    except DeckConsistencyError as exc:
        return _inconsistent(str(exc))

    pk = norm.get(card_key(path(k)))
    ck = norm.get(card_key(cycle(k))) if k >= 3 else 0
    pk1 = lower[k - 1].get(card_key(path(k - 1))) if k >= 2 else 0
    # The number of path components with at least k-1 vertices falls out of
    # three card counts; everything contributing to P_{k-1} also contributes
    # to P_k except one count per such path and k per whole-cycle card.
    long_paths = pk1 - pk - k * ck
    if long_paths < 0:
        return _inconsistent(
            "path-card counts imply a negative number of long path components"
        )

    big: list[Component]
    if pk <= 1:
        # any component beyond k vertices would land 2 or more P_k cards
        big = []
    elif long_paths == 0:
        if pk <= k:
            return _inconsistent(
                "path-card count too small for any arrangement of large cycles"
            )
        if pk <= 2 * k + 1:
            # exactly one large cycle, and it carries pk vertices
            big = [(CYCLE, pk)]
        else:
            return None  # several large cycles; splits are ambiguous
    elif long_paths == 1 and pk <= k:
        # a single long path supplies every P_k card
        big = [(PATH, pk + k - 1)]
    else:
        return None

    comps: list[Component] = list(big)
    for j in range(k, 0, -1):
        deck_j = norm if j == k else lower[j]
        if j >= 3:
            comps.extend([(CYCLE, j)] * deck_j.get(card_key(cycle(j))))
        seen = deck_j.get(card_key(path(j)))
        from_larger = sum(
            _induced_paths(comp, j) for comp in comps if comp[1] > j
        )
        p_count = seen - from_larger
        if p_count < 0:
            return _inconsistent(
                f"card counts imply a negative number of {j}-vertex path components"
            )
        comps.extend([(PATH, j)] * p_count)

    if sum(size for _, size in comps) != n:
        return _inconsistent("component sizes do not add up to the vertex count")
    candidate = MaxDeg2Graph(tuple(comps))
    if deck_profile(candidate, k) != norm:
        return _inconsistent(
            "derived component counts do not reproduce the input deck"
        )
    return ReconResult(UNIQUE, (candidate,), "component_analysis", None)


def reconstruct(profile: DeckProfile, n: int | None = None) -> ReconResult:
    """Recover the max-degree-2 graph(s) behind a deck.

    Returns Unique when exactly one such graph fits, Ambiguous with the
    full sorted class when several do, and Inconsistent when the deck
    cannot have come from any graph under the promise.  Component analysis
    handles arbitrarily large n; the enumeration fallback needs n <= 18.
    """
    if n is not None and n != profile.n:
        return _inconsistent(
            f"profile says n={profile.n} but n={n} was requested"
        )
    n = profile.n
    k = profile.k
    try:
        cards = _structural_cards(profile)
    except ValueError as exc:
        return _inconsistent(f"unusable card key: {exc}")
    for card in cards:
        if card.n != k:
            return _inconsistent(
                f"card {card.to_spec() if card.components else 'empty'!s} "
                f"has {card.n} vertices in a deck of order {k}"
            )
    if profile.total != comb(n, k):
        return _inconsistent(
            f"deck holds {profile.total} cards; a full deck has C({n},{k})"
            f" = {comb(n, k)}"
        )
    norm = DeckProfile(
        n, k, {card_key(card): count for card, count in cards.items()}
    )

    if k == n:
        (card,) = cards
        return ReconResult(UNIQUE, (card,), "component_analysis", None)
    if k >= 2:
        verdict = _component_analysis(norm, n, k)
        if verdict is not None:
            return verdict
    if n > MAX_SEARCH_VERTICES:
        raise SizeLimitError(
            f"enumeration fallback supports n <= {MAX_SEARCH_VERTICES}, got {n}"
        )
    matches = tuple(
        sorted(h for h in _maxdeg2_universe(n) if deck_profile(h, k) == norm)
    )
    if not matches:
        return _inconsistent("no max-degree-2 graph has this deck")
    if len(matches) == 1:
        return ReconResult(UNIQUE, matches, "universe_search", None)
    return ReconResult(AMBIGUOUS, matches, "universe_search", None)


# ---------------------------------------------------------------------------
# witness pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessPair:
    """Two non-isomorphic graphs guaranteed to share every deck up to order k."""

    kind: str
    a: MaxDeg2Graph | GeneralGraph
    b: MaxDeg2Graph | GeneralGraph
    k: int

    def to_json_dict(self) -> dict:
        def encode(g):
            if isinstance(g, MaxDeg2Graph):
                return {"spec": g.to_spec()}
            return {"n": g.n, "edges": [list(e) for e in g.edges()]}

        return {"kind": self.kind, "k": self.k, "a": encode(self.a), "b": encode(self.b)}


def spider(r: int) -> GeneralGraph:
    """Tree on r vertices with exactly three leaves: legs of length 1, 1, r-3."""
    if r < 4:
        raise ValueError("a three-leaf tree needs at least 4 vertices")
    edges = [(0, 1), (0, 2), (0, 3)]
    edges.extend((i, i + 1) for i in range(3, r - 1))
    return GeneralGraph.from_edges(r, edges)


def paw() -> GeneralGraph:
    """Triangle with a pendant edge."""
    return GeneralGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def star_forest_pair(k: int) -> tuple[GeneralGraph, GeneralGraph]:
    """Classic star-forest pair with equal k-decks but max degree k vs k-1.

    The first forest takes C(k, 2i) stars with k-2i leaves over all i; the
    second takes C(k, 2i+1) stars with k-2i-1 leaves.
    """
    if k < 2:
        raise ValueError("star-forest pairs need k >= 2")
    a = star_forest((k - 2 * i, comb(k, 2 * i)) for i in range(k // 2 + 1))
    b = star_forest(
        (k - 2 * i - 1, comb(k, 2 * i + 1)) for i in range((k + 1) // 2)
    )
    return a, b


_IMPOSTOR_VARIANTS = ("cycle", "path", "paw", "k4")


def witness_pair(kind: str, **params) -> WitnessPair:
    """Build one guaranteed equal-deck pair.

    Kinds and parameters:

    * ``cycle_split`` (q, r, k): one cycle vs two cycles, q, r >= k+1.
    * ``cycle_path`` (q, r, k): one path vs cycle plus path, q >= k+1,
      r >= k-1 (and r >= 1).
    * ``path_shift`` (q, r, k): two paths vs the pair shifted by one
      vertex, q, r >= max(k, 2), q != r.
    * ``connectedness`` (n): the n-vertex path vs a cycle-plus-path with
      the same ⌊n/2⌋-deck, n >= 3 (partner is disconnected for n >= 4).
    * ``star_forest`` (k): the two star forests with equal k-decks and
      different maximum degree.
    * ``impostor`` (variant, m where applicable): a max-degree-2 graph and
      a degree-3 graph with the same 3-deck; variants ``cycle`` (m >= 4),
      ``path`` (m >= 5), ``paw``, ``k4``.
    """
    if kind == "cycle_split":
        q, r, k = params["q"], params["r"], params["k"]
        if min(q, r) < max(k + 1, 3):
            raise ValueError("cycle_split needs q, r >= k+1 and cycles of length >= 3")
        return WitnessPair(kind, cycle(q + r), cycle(q) + cycle(r), k)
    if kind == "cycle_path":
        q, r, k = params["q"], params["r"], params["k"]
        if q < max(k + 1, 3) or r < max(k - 1, 1):
            raise ValueError("cycle_path needs q >= k+1 (cycle length >= 3) and r >= k-1, r >= 1")
        return WitnessPair(kind, path(q + r), cycle(q) + path(r), k)
    if kind == "path_shift":
        q, r, k = params["q"], params["r"], params["k"]
        if min(q, r) < max(k, 2):
            raise ValueError("path_shift needs q, r >= k and both shifted paths nonempty")
        if q == r:
            raise ValueError("path_shift with q = r gives an isomorphic pair")
        return WitnessPair(kind, path(q - 1) + path(r), path(q) + path(r - 1), k)
    if kind == "connectedness":
        n = params["n"]
        if n < 3:
            raise ValueError("connectedness pairs need n >= 3")
        k = n // 2
        q = (n + 1) // 2 + 1
        r = n - q
        partner = cycle(q) + path(r) if r >= 1 else cycle(q)
        return WitnessPair(kind, path(n), partner, k)
    if kind == "star_forest":
        k = params["k"]
        a, b = star_forest_pair(k)
        return WitnessPair(kind, a, b, k)
    if kind == "impostor":
        variant = params.get("variant", "cycle")
        if variant not in _IMPOSTOR_VARIANTS:
            raise ValueError(f"unknown impostor variant {variant!r}")
        if variant == "cycle":
            m = params["m"]
            if m < 4:
                raise ValueError("the cycle impostor needs m >= 4")
            return WitnessPair(kind, to_general(cycle(m) + path(1)), spider(m + 1), 3)
        if variant == "path":
            m = params["m"]
            if m < 5:
                raise ValueError("the path impostor needs m >= 5")
            b = disjoint_union(spider(m - 1), to_general(path(2)))
            return WitnessPair(kind, to_general(path(m) + path(1)), b, 3)
        if variant == "paw":
            a = to_general(path(4) + cycle(3) + path(1))
            b = disjoint_union(paw(), to_general(path(2) + path(2)))
            return WitnessPair(kind, a, b, 3)
        a = to_general(MaxDeg2Graph(((CYCLE, 3),) * 4 + ((PATH, 1),) * 4))
        k4 = GeneralGraph.from_edges(
            4, [(u, v) for u in range(4) for v in range(u + 1, 4)]
        )
        b = disjoint_union(k4, to_general(MaxDeg2Graph(((PATH, 2),) * 6)))
        return WitnessPair(kind, a, b, 3)
    raise ValueError(f"unknown witness kind {kind!r}")


def witness_decks_agree(pair: WitnessPair) -> bool:
    """Check the pair's promise by direct computation at its own k."""
    a, b = pair.a, pair.b
    if isinstance(a, MaxDeg2Graph) and isinstance(b, MaxDeg2Graph):
        return deck_profile(a, pair.k) == deck_profile(b, pair.k)
    ga = to_general(a) if isinstance(a, MaxDeg2Graph) else a
    gb = to_general(b) if isinstance(b, MaxDeg2Graph) else b
    return _brute_deck(ga, pair.k) == _brute_deck(gb, pair.k)


# ---------------------------------------------------------------------------
# deck-derived degree data
# ---------------------------------------------------------------------------


def degree_data_from_deck(profile: DeckProfile) -> tuple[int, int]:
    """(edge count, edge-to-edge incidence count) from any deck of order >= 3.

    The incidence count equals the sum of C(d_v, 2) over vertices, so for
    max-degree-2 hosts it counts the degree-2 vertices.
    """
    if profile.k < 3:
        raise ValueError("degree data needs a deck of order at least 3")
    d3 = restrict_deck(profile, 3)
    d2 = restrict_deck(d3, 2)
    edges = d2.get(card_key(path(2)))
    incidences = d3.get(card_key(path(3))) + 3 * d3.get(card_key(cycle(3)))
    return edges, incidences

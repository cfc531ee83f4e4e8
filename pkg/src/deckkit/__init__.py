"""deckkit: exact induced-subgraph decks of small graphs, and their inverses.

The package splits along the directions the math does.  ``graphs`` holds
the two graph models (unions of paths and cycles, plus a bitset model
for arbitrary graphs up to canonical relabeling).  ``decks`` counts
cards: closed-form counting for the max-degree-2 world, subset
enumeration for everything else.  ``recon`` inverts decks and carries
the reconstruction-threshold formula with its exhaustive-search
counterpart.  ``oracle`` re-derives everything the slow way so the fast
paths have something to be checked against, and ``verify`` bundles the
standing invariant suites that the command line exposes.
"""

from .decks import (
    DeckConsistencyError,
    DeckProfile,
    card_key,
    count_induced,
    deck_profile,
    deck_profile_bruteforce,
    decks_equal,
    independent_set_count,
    parse_card_key,
    read_deck,
    restrict_deck,
    s_prime,
    write_deck,
)
from .graphs import (
    GeneralGraph,
    GraphSpecError,
    MaxDeg2Graph,
    SizeLimitError,
    canonical_code,
    cycle,
    empty_graph,
    enumerate_general,
    enumerate_maxdeg2,
    parse_spec,
    path,
    read_edge_file,
    to_general,
    to_maxdeg2,
)
from .oracle import (
    EquivalenceReport,
    StanleyReport,
    find_equivalence_classes,
    fixture_dump,
    stanley_sweep,
)
from .recon import (
    ReconResult,
    RhoReport,
    WitnessPair,
    degree_data_from_deck,
    reconstruct,
    rho_report,
    rho_search,
    witness_decks_agree,
    witness_pair,
)

__version__ = "0.1.0"

__all__ = [
    "DeckConsistencyError",
    "DeckProfile",
    "EquivalenceReport",
    "GeneralGraph",
    "GraphSpecError",
    "MaxDeg2Graph",
    "ReconResult",
    "RhoReport",
    "SizeLimitError",
    "StanleyReport",
    "WitnessPair",
    "canonical_code",
    "card_key",
    "count_induced",
    "cycle",
    "deck_profile",
    "deck_profile_bruteforce",
    "decks_equal",
    "degree_data_from_deck",
    "empty_graph",
    "enumerate_general",
    "enumerate_maxdeg2",
    "find_equivalence_classes",
    "fixture_dump",
    "independent_set_count",
    "parse_card_key",
    "parse_spec",
    "path",
    "read_deck",
    "read_edge_file",
    "reconstruct",
    "restrict_deck",
    "rho_report",
    "rho_search",
    "s_prime",
    "stanley_sweep",
    "to_general",
    "to_maxdeg2",
    "witness_decks_agree",
    "witness_pair",
    "write_deck",
    "__version__",
]

"""Generalized total sigma-irregularity of graphs and integer sequences.

The index sums ``|a - b| ** f`` over all unordered pairs of a degree
sequence.  This package computes it, tests graphicality, enumerates
degree-sequence domains and runs exhaustive extremal searches.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    TIE_TOLERANCE,
    DifferenceProfile,
    ExponentKind,
    ExponentSpec,
    Order,
    binomial_threshold,
    canonical,
    chemical_threshold,
    compare_values,
    difference_profile,
    first_zagreb,
    irr_t,
    sequence_threshold,
    sigma_t_classic,
    sigma_t_f,
    tree_threshold,
)
from .enumeration import Domain, DomainKind, domain_size, enumerate_domain, shard  # noqa: E402
from .extremal import (  # noqa: E402
    DomainTooLarge,
    ExtremalReport,
    TheoremId,
    Verdict,
    chem_relaxation,
    distinct_pair_exchange_check,
    search_extremum,
    verify,
    y_graph_check,
)
from .graphical import (  # noqa: E402
    SmallGraph,
    antiregular_sequence,
    has_connected_realization,
    irr,
    is_graphical,
    is_tree_sequence,
    realizations,
    sigma,
)

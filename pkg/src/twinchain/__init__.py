"""Facet counts of twinned chain polytopes from poset data."""

from ._kernels import BACKEND
from .chains import antichains, chain_count, chains_through, maximal_chains
from .errors import (
    BoundViolation,
    CycleError,
    DegenerateInput,
    DimensionMismatch,
    GoldenMismatch,
    OddDimension,
    SizeError,
    UnvalidatedInput,
)
from .poset import (
    Graph,
    Poset,
    antichain,
    canonical_code,
    chain,
    comparability_graph,
    disjoint_union,
    graph_canonical_code,
    induced_subposet,
    labeled_graph_iso_by_identity,
    ordinal_sum,
    poset_from_covers,
)
from .twinned import (
    FacetFamily,
    SignedChain,
    bound,
    closed_form,
    delta_poset,
    direct_sum_pair,
    facet_chains,
    facet_count,
    facet_count_chain_P,
    is_equality_case,
    lemma_inequality_check,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundViolation",
    "CycleError",
    "DegenerateInput",
    "DimensionMismatch",
    "GoldenMismatch",
    "OddDimension",
    "SizeError",
    "UnvalidatedInput",
    "Graph",
    "Poset",
    "antichain",
    "canonical_code",
    "chain",
    "comparability_graph",
    "disjoint_union",
    "graph_canonical_code",
    "induced_subposet",
    "labeled_graph_iso_by_identity",
    "ordinal_sum",
    "poset_from_covers",
    "FacetFamily",
    "SignedChain",
    "bound",
    "closed_form",
    "delta_poset",
    "direct_sum_pair",
    "facet_chains",
    "facet_count",
    "facet_count_chain_P",
    "is_equality_case",
    "lemma_inequality_check",
]

"""Exact arithmetic toolkit for finite capacities (non-additive set functions)."""

__version__ = "0.1.0"

from .capacity import (
    Capacity,
    ClassificationReport,
    MobiusRepresentation,
    ProbabilityMeasure,
    classify,
    conjugate,
    dominates,
    is_infinity_alternating,
    is_infinity_monotone,
    is_k_alternating,
    is_k_monotone,
    is_two_alternating,
    is_two_monotone,
    mobius,
    validate,
)
from .choquet import (
    MeasurableFunction,
    choquet_integral,
    comonotone_permutation,
    dominated_extreme_points,
    permutation_measure,
    subadditivity_search,
)
from .setalg import AtomPermutation, Chain, GroundSet, prefix_sets
from .transforms import (
    chain_infimum,
    extract_chain_probability,
    find_strict_reduction,
    invariant_subfield,
    sandwich_probability,
    transform,
)

__all__ = [
    "AtomPermutation",
    "Capacity",
    "Chain",
    "ClassificationReport",
    "GroundSet",
    "MeasurableFunction",
    "MobiusRepresentation",
    "ProbabilityMeasure",
    "chain_infimum",
    "choquet_integral",
    "classify",
    "comonotone_permutation",
    "conjugate",
    "dominated_extreme_points",
    "dominates",
    "extract_chain_probability",
    "find_strict_reduction",
    "invariant_subfield",
    "is_infinity_alternating",
    "is_infinity_monotone",
    "is_k_alternating",
    "is_k_monotone",
    "is_two_alternating",
    "is_two_monotone",
    "mobius",
    "permutation_measure",
    "prefix_sets",
    "sandwich_probability",
    "subadditivity_search",
    "transform",
    "validate",
]

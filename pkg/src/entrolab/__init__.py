"""Exact workbench for the growth of monomial endomorphisms: colengths of
monomial ideals, Koszul complexes with exact multigraded cohomology, and
entropy bound calculators for the derived pullback functor."""

from .errors import (
    DimensionMismatchError,
    HypothesisError,
    NotFiniteLengthError,
    NotRegularError,
    RegionOverflowError,
    SpecError,
    SquareCommutationError,
)
from .monomials import (
    MonomialIdeal,
    RingSpec,
    colength,
    colength_bruteforce,
    contains,
    divides,
    ideal_sum,
    is_m_primary,
    krull_dimension,
    minimalize,
    pure_power_bounds,
)
from .endos import (
    MonomialMap,
    TransferSquare,
    apply_to_monomial,
    check_square,
    compose,
    image_ideal,
    is_finite_length,
    iterate,
)
from .koszul import (
    GeneratorProfile,
    HomologyLengths,
    KoszulComplex,
    build_koszul,
    exact_rank,
    generator_profile,
    h0_length,
    homology_lengths,
    pullback,
)
from .entropy import (
    EntropyRow,
    EntropySequence,
    LimitEstimate,
    SandwichReport,
    SandwichRow,
    TransferReport,
    complexity_lower_bound,
    complexity_upper_bound,
    diagonal_closed_form,
    estimate_limit,
    frobenius_prediction,
    int_log,
    local_entropy_sequence,
    sandwich,
    sandwich_violations,
    transfer_check,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatchError",
    "HypothesisError",
    "NotFiniteLengthError",
    "NotRegularError",
    "RegionOverflowError",
    "SpecError",
    "SquareCommutationError",
    "MonomialIdeal",
    "RingSpec",
    "colength",
    "colength_bruteforce",
    "contains",
    "divides",
    "ideal_sum",
    "is_m_primary",
    "krull_dimension",
    "minimalize",
    "pure_power_bounds",
    "MonomialMap",
    "TransferSquare",
    "apply_to_monomial",
    "check_square",
    "compose",
    "image_ideal",
    "is_finite_length",
    "iterate",
    "GeneratorProfile",
    "HomologyLengths",
    "KoszulComplex",
    "build_koszul",
    "exact_rank",
    "generator_profile",
    "h0_length",
    "homology_lengths",
    "pullback",
    "EntropyRow",
    "EntropySequence",
    "LimitEstimate",
    "SandwichReport",
    "SandwichRow",
    "TransferReport",
    "complexity_lower_bound",
    "complexity_upper_bound",
    "diagonal_closed_form",
    "estimate_limit",
    "frobenius_prediction",
    "int_log",
    "local_entropy_sequence",
    "sandwich",
    "sandwich_violations",
    "transfer_check",
    "__version__",
]

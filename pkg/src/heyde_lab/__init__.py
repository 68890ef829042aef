"""Exact-arithmetic checks of conditional-symmetry characterizations on
finite abelian groups."""

__version__ = "0.1.0"

from .distributions import (
    CharFunction,
    Distribution,
    IdempotentWitness,
    char_function,
    convolve,
    distribution_from_char,
    haar_on,
    is_degenerate,
    is_gaussian,
    is_idempotent_shift,
    make_distribution,
    one_set,
    point_mass,
    push_forward,
    reflect,
    sample,
    shift,
    symmetrize,
    uniform,
)
from .funceq import (
    GroupFunction,
    finite_difference,
    heyde_difference_chain,
    m_forms_difference_chain,
    neg_log_char,
    quadratic_check,
    quadratic_vanishing,
)
from .groups import (
    Endomorphism,
    FiniteAbelianGroup,
    GroupElement,
    IncompatibleMatrixError,
    Subgroup,
    annihilator,
    character,
    identity_endomorphism,
    make_endomorphism,
    make_group,
    neg_identity_endomorphism,
    order2_subgroup,
    scaling_endomorphism,
    subgroup_generated,
)
from .predicates import (
    FormsInstance,
    JointDistribution,
    are_forms_independent,
    canonical_instance,
    canonicalize,
    derived_forms,
    heyde_equation_check,
    independence_equation_check,
    is_conditionally_symmetric,
    joint_of_forms,
    symmetry_forces_equal,
)
from .search import (
    PadicScanReport,
    ScanResult,
    SearchConfig,
    SymmetryReport,
    grid_scan,
    kernel_construction,
    order2_construction,
    padic_scan,
)

__all__ = [
    "__version__",
    "CharFunction",
    "Distribution",
    "Endomorphism",
    "FiniteAbelianGroup",
    "FormsInstance",
    "GroupElement",
    "GroupFunction",
    "IdempotentWitness",
    "IncompatibleMatrixError",
    "JointDistribution",
    "PadicScanReport",
    "ScanResult",
    "SearchConfig",
    "Subgroup",
    "SymmetryReport",
    "annihilator",
    "are_forms_independent",
    "canonical_instance",
    "canonicalize",
    "char_function",
    "character",
    "convolve",
    "derived_forms",
    "distribution_from_char",
    "finite_difference",
    "grid_scan",
    "haar_on",
    "heyde_difference_chain",
    "heyde_equation_check",
    "identity_endomorphism",
    "independence_equation_check",
    "is_conditionally_symmetric",
    "is_degenerate",
    "is_gaussian",
    "is_idempotent_shift",
    "joint_of_forms",
    "kernel_construction",
    "m_forms_difference_chain",
    "make_distribution",
    "make_endomorphism",
    "make_group",
    "neg_identity_endomorphism",
    "neg_log_char",
    "one_set",
    "order2_construction",
    "order2_subgroup",
    "padic_scan",
    "point_mass",
    "push_forward",
    "quadratic_check",
    "quadratic_vanishing",
    "reflect",
    "sample",
    "scaling_endomorphism",
    "shift",
    "subgroup_generated",
    "symmetrize",
    "symmetry_forces_equal",
    "uniform",
]

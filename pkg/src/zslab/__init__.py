"""zslab: arithmetic of zero-sum sequences over finite abelian groups.

Atoms and Davenport constants, sets of lengths and their distances, the
U_k / rho_k / lambda_k family, AAMP shape classification, and a registry
of desk-scale theorem checks, all exact at the scales they claim.
"""
from .abelian import (
    FiniteAbelianGroup,
    GroupElement,
    GroupParseError,
    d_star,
    is_independent,
    make_group,
    order_of,
    parse_group,
    parse_subset,
)
from .zerosum import AtomSet, Sequence, davenport, enumerate_atoms, is_atom
from .lengths import (
    LengthEngine,
    LengthSet,
    delta_of,
    half_factorial_scan,
    length_set,
    sumset,
)
from .invariants import (
    InvariantReport,
    daleth,
    delta_observed,
    elasticity_up_to,
    lambda_formula_check,
    lambda_k,
    rho_k,
    u_M,
    u_k,
)
from .structure import (
    AampDescriptor,
    CfExpansion,
    c5_shape,
    cf_odd,
    classify_aamp,
    closed_form_membership,
    d_a_criterion,
    delta_star_observed,
    min_bound,
    min_delta_two_element,
)
from .verify import CheckReport, run_check, run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "FiniteAbelianGroup", "GroupElement", "GroupParseError", "make_group",
    "parse_group", "parse_subset", "d_star", "order_of", "is_independent",
    "Sequence", "AtomSet", "enumerate_atoms", "davenport", "is_atom",
    "LengthSet", "LengthEngine", "length_set", "delta_of", "sumset",
    "half_factorial_scan",
    "InvariantReport", "u_k", "u_M", "rho_k", "lambda_k", "daleth",
    "delta_observed", "elasticity_up_to", "lambda_formula_check",
    "AampDescriptor", "CfExpansion", "classify_aamp", "min_bound", "cf_odd",
    "min_delta_two_element", "d_a_criterion", "delta_star_observed",
    "closed_form_membership", "c5_shape",
    "CheckReport", "run_check", "run_suite", "suite_names",
    "__version__",
]

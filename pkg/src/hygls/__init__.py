"""Fourier analysis on finite abelian groups with dual Haar measures, sharp
transform-norm constants, and a Grand Lebesgue Space norm engine, plus
property-based verification suites for the derived GLS-to-GLS bounds."""

from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteAbelianGroup,
    MeasuredDualPair,
    make_group,
    make_measure_pair,
)
from .fourier import (
    GroupFunction,
    chirp_function,
    constant_function,
    fourier_fast,
    fourier_forward,
    fourier_inverse,
    indicator,
    point_mass,
    random_function,
    roundtrip_error,
)
from .norms import conjugate_exponent, lp_norm, lp_norm_grid, s_of_p, t_of_q
from .gls import (
    DegenerateWeightError,
    P_CAP,
    PsiFunction,
    TailModel,
    fundamental_function,
    gls_norm,
    natural_function,
    psi_constant,
    psi_exp,
    psi_power,
    psi_singleton,
    tail_bound,
    tail_check,
    truncated_fundamental,
)
from .records import CheckRecord, make_record
from .hy import (
    OpnormResult,
    classify_pair,
    in_domain_Q,
    in_domain_Q_hat,
    k_const,
    k_hat_const,
    opnorm_search,
    scan_witness_ratio,
    unboundedness_scan,
    verify_hy,
    verify_hy_conjugate,
)
from .theorems import (
    Factorization,
    FactorizationError,
    factorization_from_components,
    factorization_residual,
    factorize_trivial,
    theorem21_bound,
    theorem22_bound,
    verify_theorem21,
    verify_theorem22,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_ORDER",
    "FiniteAbelianGroup",
    "MeasuredDualPair",
    "make_group",
    "make_measure_pair",
    "GroupFunction",
    "chirp_function",
    "constant_function",
    "fourier_fast",
    "fourier_forward",
    "fourier_inverse",
    "indicator",
    "point_mass",
    "random_function",
    "roundtrip_error",
    "conjugate_exponent",
    "lp_norm",
    "lp_norm_grid",
    "s_of_p",
    "t_of_q",
    "DegenerateWeightError",
    "P_CAP",
    "PsiFunction",
    "TailModel",
    "fundamental_function",
    "gls_norm",
    "natural_function",
    "psi_constant",
    "psi_exp",
    "psi_power",
    "psi_singleton",
    "tail_bound",
    "tail_check",
    "truncated_fundamental",
    "CheckRecord",
    "make_record",
    "OpnormResult",
    "classify_pair",
    "in_domain_Q",
    "in_domain_Q_hat",
    "k_const",
    "k_hat_const",
    "opnorm_search",
    "scan_witness_ratio",
    "unboundedness_scan",
    "verify_hy",
    "verify_hy_conjugate",
    "Factorization",
    "FactorizationError",
    "factorization_from_components",
    "factorization_residual",
    "factorize_trivial",
    "theorem21_bound",
    "theorem22_bound",
    "verify_theorem21",
    "verify_theorem22",
    "__version__",
]

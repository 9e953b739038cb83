"""critline: critical-line zeta bound toolkit.

Exact truncated-series pipeline for the optimal bound coefficients,
the weight function F, extremal bandlimited approximations to the Poisson
kernel, explicit-formula verification against tabulated zeros, and the
supporting prime/zeta numerics.
"""

__version__ = "0.1.0"

from .bound_engine import (
    BoundReport,
    CurvePolicy,
    archimedean_identity_check,
    dirichlet_term,
    g_min,
    gamma_moment_check,
    scan_margins,
    theorem1_rhs,
    theorem2_curve,
    w0_weight,
)
from .errors import CritlineError
from .explicit_formula import (
    GWBreakdown,
    gw_prime_side,
    gw_zero_side,
    lemma3_bracket,
    partial_fraction_residual,
    verify_gw,
)
from .extremal_poisson import KernelParams, eval_m, ft_m, l1_dist, poisson_h
from .optimal_coeffs import PipelineResult, a_coeff, b_coeff, run_pipeline
from .prime_arith import LambdaTable, lambda_sieve, weighted_psi
from .series_algebra import (
    ExactCoefficient,
    TruncatedSeries,
    coeff_eval,
    ps_add,
    ps_compose,
    ps_log,
    ps_mul,
    ps_recip,
    ps_revert,
)
from .special_f import FMethod, f_eval, f_prime
from .zeros_table import ZeroTable, load_zeros, zero_count_check
from .zeta_oracle import digamma, log_abs_zeta_crit, zeta_em, zeta_logderiv

__all__ = [
    "BoundReport", "CritlineError", "CurvePolicy", "ExactCoefficient",
    "FMethod", "GWBreakdown", "KernelParams", "LambdaTable", "PipelineResult",
    "TruncatedSeries", "ZeroTable", "a_coeff", "archimedean_identity_check",
    "b_coeff", "coeff_eval", "digamma", "dirichlet_term", "eval_m", "f_eval",
    "f_prime", "ft_m", "g_min", "gamma_moment_check", "gw_prime_side",
    "gw_zero_side", "l1_dist", "lambda_sieve", "lemma3_bracket",
    "load_zeros", "log_abs_zeta_crit", "partial_fraction_residual",
    "poisson_h", "ps_add", "ps_compose", "ps_log", "ps_mul", "ps_recip",
    "ps_revert", "run_pipeline", "scan_margins", "theorem1_rhs",
    "theorem2_curve", "verify_gw", "w0_weight", "weighted_psi", "zeta_em",
    "zero_count_check", "zeta_logderiv",
]

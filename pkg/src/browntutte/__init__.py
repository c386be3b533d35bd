"""Weight functions of the Brown-Tutte moment problem.

The integers A(M, n) are the moments of a weight W_M on (0, 256/27).  This
package computes the integers exactly, writes W_M as a Meijer G-function and
as a finite sum of hypergeometric series, evaluates it, and checks the
moment, Stieltjes and positivity statements numerically.
"""
from ._backend import BACKEND
from .combinatorics import (
    SUPPORT_RADIUS,
    brown_tutte,
    brown_tutte_row,
    catalan,
    moment_tilde,
    prefactor_P,
    support_radius,
)
from .errors import BrownTutteError, ConvergenceError, DivergenceError, DomainError, PoleError, SpecError
from .meijer import (
    MeijerGSpec,
    WeightRepresentation,
    delta_list,
    endpoint_expansion,
    ogf_spec,
    prefactor_rg,
    prefactor_rw,
    ratio_rg_rw,
    reshuffle_ogf_to_weight,
    slater_decompose,
    weight_representation,
    weight_spec,
)
from .positivity import (
    PositivityReport,
    ShiftLists,
    beta_factor_density,
    check_pairing,
    convolution_certificate,
    shift_lists,
)
from .quadrature import QuadratureResult, integrate_de
from .special import HypSeriesParams, HypSeriesResult, gamma, hyp_pfq, log_gamma_signed, pfq, pochhammer
from .verification import (
    VerificationReport,
    fractional_moment,
    moment_continuation,
    moment_numeric,
    moment_range,
    ogf,
    stieltjes_check,
    stieltjes_lhs,
    stieltjes_rhs,
    verify_suite,
)
from .weight import SignChangeReport, endpoint_exponent_fit, leading_exponents, sign_scan, weight, weight_tilde

__version__ = "0.1.0"

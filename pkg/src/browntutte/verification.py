"""Numerical checks tying the weights back to the moment data.

Each check produces a :class:`VerificationReport`; failures are data, not
exceptions, so that :func:`verify_suite` always returns a complete list.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .combinatorics import SUPPORT_RADIUS, brown_tutte
from .errors import DomainError, PoleError
from .meijer import prefactor_rw, weight_spec
from .quadrature import QuadratureResult, integrate_de
from .special import HypSeriesParams, hyp_pfq, log_gamma_signed
from .weight import R, _check_M, leading_exponents, sign_scan, weight

__all__ = [
    "VerificationReport",
    "moment_numeric",
    "fractional_moment",
    "moment_continuation",
    "moment_range",
    "ogf",
    "stieltjes_lhs",
    "stieltjes_rhs",
    "stieltjes_check",
    "continuation_bound",
    "verify_suite",
]

DEFAULT_TOL = 1e-8
NEAR_POLE_TOL = 1e-6
NEAR_POLE = Fraction(11, 10)  # z/R below this counts as near the pole at x = R
NORMALIZATION_TOL = 1e-10
CONTINUATION_TOL = 1e-11
N_MAX_DEFAULT_CAP = 20
BOUNDARY_TOL = 1e-6  # the ogf series at R z = 1 converges only like k**-3/2


@dataclass
class VerificationReport:
    name: str
    M: int
    parameter: float
    expected: float
    computed: float
    rel_error: float
    passed: bool
    tolerance: float

    def to_dict(self) -> dict:
        return asdict(self)


def _rel_error(expected: float, computed: float) -> float:
    if expected == computed:
        return 0.0
    if expected == 0.0:
        return abs(computed)
    return abs(computed - expected) / abs(expected)


def _report(name, M, parameter, expected, computed, tol) -> VerificationReport:
    err = _rel_error(expected, computed)
    return VerificationReport(name, M, float(parameter), float(expected), float(computed), err, bool(err <= tol), tol)


# ---------------------------------------------------------------------------
# moments


@lru_cache(maxsize=256)
def _weight_at(M: int, key: bytes) -> np.ndarray:
    return weight(M, np.frombuffer(key, dtype=np.float64))


def _cached_weight(M: int, x: np.ndarray) -> np.ndarray:
    # quadrature nodes on (0, R) repeat across moments, so memoise per node array
    return _weight_at(M, np.ascontiguousarray(x, dtype=np.float64).tobytes())


def _power_moment(M: int, s: float, rel_tol: float) -> QuadratureResult:
    """Quadrature of x**(s-1) W_M(x) over (0, R)."""

    def f(x):
        with np.errstate(over="ignore"):
            return x ** (s - 1.0) * _cached_weight(M, x)

    return integrate_de(f, 0.0, R, rel_tol=0.1 * rel_tol)


def moment_numeric(M: int, n: int, rel_tol: float = DEFAULT_TOL) -> VerificationReport:
    """Compare the quadrature moment of x**n W_M with the exact A(M, n)."""
    M = _check_M(M)
    if n < 0:
        raise DomainError("n must be >= 0")
    res = _power_moment(M, n + 1.0, rel_tol)
    return _report("moment", M, n, float(brown_tutte(M, n)), res.value, rel_tol)


def fractional_moment(M: int, s, rel_tol: float = DEFAULT_TOL) -> VerificationReport:
    """Quadrature of x**(s-1) W_M against :func:`moment_continuation`."""
    M = _check_M(M)
    res = _power_moment(M, float(s), rel_tol)
    expected = moment_continuation(M, s)
    rep = _report("fractional-moment", M, s, expected, res.value, rel_tol)
    rep.passed = rep.passed and res.converged
    return rep


def moment_range(M: int) -> Fraction:
    """Lower end of the Mellin strip: the integral of x**(s-1) W_M converges iff s > this.

    It is minus the smallest surviving small-x exponent.  Odd M reproduce the
    classical bound 1/4 - M/2; for even M the leading term at 1/4 - M/2 lands on
    a cancelled gamma pole and the strip reaches only 1/2 - M/2.
    """
    return -leading_exponents(_check_M(M))[0]


def continuation_bound(M: int) -> Fraction:
    """The admissibility bound s >= 1/4 - M/2 enforced by :func:`moment_continuation`."""
    return Fraction(1, 4) - Fraction(_check_M(M), 2)


def moment_continuation(M: int, s) -> float:
    """Analytic continuation A~(M, s) = A(M, s-1) of the moments to real s.

    Evaluated as r_W(M) R**s prod Gamma(s + beta_j) / prod Gamma(s + alpha_j)
    with signed log-gammas.  ``s`` may be a Fraction, which makes the pole
    test exact.

    Raises
    ------
    DomainError
        s < 1/4 - M/2.
    PoleError
        a numerator gamma sits on a pole (the moment integral diverges there).
    """
    M = _check_M(M)
    if s < continuation_bound(M):
        raise DomainError(f"s = {s} is below the admissible bound {continuation_bound(M)} for M = {M}")
    spec = weight_spec(M)
    exact = isinstance(s, Rational)
    sv = Fraction(s) if exact else float(s)
    # pair parameters differing by an integer: Gamma(s+b)/Gamma(s+a) is then a
    # rational function of s, so coincident poles cancel exactly
    ups, downs = list(spec.beta), list(spec.alpha)
    ratio = Fraction(1) if exact else 1.0
    for b in list(ups):
        for a in downs:
            d = b - a
            if d.denominator == 1:
                ups.remove(b)
                downs.remove(a)
                base = sv + (a if exact else float(a))
                for k in range(abs(int(d))):
                    factor = base + k if d > 0 else base + d + k
                    if factor == 0 and d < 0:
                        raise PoleError(f"Gamma(s + {b}) has a pole at s = {s}")
                    ratio = ratio * factor if d > 0 else ratio / factor
                break
    if ratio == 0:
        return 0.0
    log_abs = math.log(prefactor_rw(M)) + float(s) * math.log(R) + math.log(abs(float(ratio)))
    sign = 1 if ratio > 0 else -1
    for b in ups:
        g = log_gamma_signed(sv + b if exact else sv + float(b))
        log_abs += g.log_abs
        sign *= g.sign
    for a in downs:
        arg = sv + a if exact else sv + float(a)
        if (exact and arg <= 0 and arg.denominator == 1) or (
            not exact and arg <= 0 and abs(arg - round(arg)) < 1e-12
        ):
            return 0.0  # 1/Gamma vanishes
        g = log_gamma_signed(arg)
        log_abs -= g.log_abs
        sign *= g.sign
    return sign * math.exp(log_abs)


# ---------------------------------------------------------------------------
# generating function and Stieltjes transform


def _ogf_params(M: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    num = tuple(Fraction(2 * M + 2 + j, 4) for j in range(4))
    den = tuple(Fraction(2 * M + 4 + j, 3) for j in range(3))
    return num, den


def ogf(M: int, z, rel_tol: float = 1e-15) -> float:
    """G(M, z) = sum_n A(M, n) z**n = A(M, 0) 4F3(Delta(4,2M+2); Delta(3,2M+4); R z).

    Valid for |R z| <= 1.  At |R z| = 1 the series converges only
    algebraically and is summed to ``max(rel_tol, 1e-6)``.
    """
    M = _check_M(M)
    w = SUPPORT_RADIUS * (Fraction(z) if isinstance(z, Rational) else z)
    if abs(w) > 1:
        raise DomainError(f"ogf series diverges for |R z| = {float(abs(w))} > 1")
    # the stop rule undershoots algebraic tails, so sum the boundary case 100x tighter
    tol = 0.01 * max(rel_tol, BOUNDARY_TOL) if abs(w) == 1 else rel_tol
    num, den = _ogf_params(M)
    res = hyp_pfq(HypSeriesParams(num, den, float(w), tol))
    return brown_tutte(M, 0) * res.value


def _check_outside(z) -> None:
    if not z > SUPPORT_RADIUS:
        raise DomainError(f"z must exceed R = 256/27, got {z}")


def stieltjes_lhs(M: int, z) -> float:
    """(1/z) G(M, 1/z) for z > R."""
    _check_outside(z)
    inv = 1 / Fraction(z) if isinstance(z, Rational) else 1.0 / z
    return float(inv) * ogf(M, inv)


def stieltjes_rhs(M: int, z, rel_tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Integral of W_M(x)/(z - x) over (0, R) for z > R.

    When z is close to R the integrand steepens near x = R, so the interval is
    split at R - (z - R) and the halves integrated separately.
    """
    M = _check_M(M)
    _check_outside(z)
    zf = float(z)

    def f(x):
        return _cached_weight(M, x) / (zf - x)

    qtol = 0.1 * rel_tol
    if z / SUPPORT_RADIUS < NEAR_POLE:
        cut = R - (zf - R)
        left = integrate_de(f, 0.0, cut, qtol)
        right = integrate_de(f, cut, R, qtol)
        return QuadratureResult(
            left.value + right.value,
            left.abs_error_estimate + right.abs_error_estimate,
            left.evaluations + right.evaluations,
            left.converged and right.converged,
            max(left.level, right.level),
        )
    return integrate_de(f, 0.0, R, qtol)


def stieltjes_check(M: int, z, rel_tol: float = DEFAULT_TOL) -> VerificationReport:
    tol = max(rel_tol, NEAR_POLE_TOL) if z / SUPPORT_RADIUS < NEAR_POLE else rel_tol
    lhs = stieltjes_lhs(M, z)
    rhs = stieltjes_rhs(M, z, min(rel_tol, tol))
    return _report("stieltjes", M, float(z), lhs, rhs.value, tol)


# ---------------------------------------------------------------------------
# suite


def _positivity_report(M: int) -> VerificationReport:
    from .positivity import convolution_certificate

    certified = convolution_certificate(M).certified
    scan = sign_scan(M)
    expected = 1.0 if certified else 0.0
    computed = 0.0 if scan.has_negative_part else 1.0
    return VerificationReport(
        "positivity", M, float(len(scan.negative_intervals)), expected, computed,
        abs(expected - computed), expected == computed, 0.0,
    )


def verify_suite(
    M_range=range(5),
    n_max: int = 12,
    z_list=(),
    rel_tol: float = DEFAULT_TOL,
    allow_large_n: bool = False,
) -> list[VerificationReport]:
    """Run the moment, continuation, normalization, Stieltjes and positivity checks.

    ``n_max`` is capped at 20 unless ``allow_large_n``: high moments put their
    mass at x -> R where the weight has to be resolved to many more digits.
    Reports are sorted by (name, M, parameter).
    """
    Ms = [_check_M(M) for M in M_range]
    if not Ms:
        raise DomainError("M_range is empty")
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if n_max > N_MAX_DEFAULT_CAP and not allow_large_n:
        n_max = N_MAX_DEFAULT_CAP
    reports = []
    for M in Ms:
        for n in range(n_max + 1):
            reports.append(moment_numeric(M, n, rel_tol))
        for n in range(min(n_max, 10) + 1):
            reports.append(
                _report("continuation", M, n + 1, float(brown_tutte(M, n)), moment_continuation(M, n + 1),
                        CONTINUATION_TOL)
            )
        norm = _power_moment(M, 1.0, NORMALIZATION_TOL).value / brown_tutte(M, 0)
        err = abs(norm - 1.0)
        reports.append(VerificationReport("normalization", M, 0.0, 1.0, norm, err, err <= NORMALIZATION_TOL,
                                          NORMALIZATION_TOL))
        for z in z_list:
            reports.append(stieltjes_check(M, z, rel_tol))
        reports.append(_positivity_report(M))
    reports.sort(key=lambda r: (r.name, r.M, r.parameter))
    return reports

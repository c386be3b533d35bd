"""Real-argument gamma machinery and the generalised hypergeometric series.

The series evaluator sums in binary64 with Neumaier compensation and reruns
in double-double arithmetic when the partial sums show heavy cancellation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DivergenceError, DomainError, PoleError

__all__ = [
    "SignedLogGamma",
    "log_gamma_signed",
    "gamma",
    "pochhammer",
    "HypSeriesParams",
    "HypSeriesResult",
    "hyp_pfq",
    "pfq",
]

POLE_TOL = 1e-12
MAX_TERMS = 10**6
CANCELLATION_RATIO = 1e6


class SignedLogGamma(NamedTuple):
    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)


def _nonpositive_integer(x, tol: float = 0.0) -> bool:
    if isinstance(x, Rational):
        return x <= 0 and Fraction(x).denominator == 1
    x = float(x)
    return x <= 0.0 and abs(x - round(x)) <= tol


def log_gamma_signed(x) -> SignedLogGamma:
    """log|Gamma(x)| and the sign of Gamma(x) for real, non-pole ``x``.

    >>> log_gamma_signed(-0.5).sign
    -1
    """
    if _nonpositive_integer(x, POLE_TOL):
        raise PoleError(f"Gamma has a pole at {x}")
    xf = float(x)
    if xf > 0.0:
        return SignedLogGamma(math.lgamma(xf), 1)
    # Gamma is negative on (-1, 0), (-3, -2), ... i.e. when floor(x) is odd
    sign = -1 if math.floor(xf) % 2 else 1
    return SignedLogGamma(math.lgamma(xf), sign)


def gamma(x) -> float:
    return log_gamma_signed(x).value


def pochhammer(a, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise DomainError("pochhammer needs k >= 0")
    if isinstance(a, Rational):
        a = Fraction(a)
        return float(math.prod((a + i for i in range(k)), start=Fraction(1)))
    return math.prod((float(a) + i for i in range(k)), start=1.0)


def _hi_lo(values) -> tuple[np.ndarray, np.ndarray]:
    hi = np.empty(len(values))
    lo = np.empty(len(values))
    for i, v in enumerate(values):
        hi[i] = float(v)
        lo[i] = float(Fraction(v) - Fraction(hi[i])) if isinstance(v, Rational) else 0.0
    return hi, lo


@dataclass(frozen=True)
class HypSeriesParams:
    """Data of one pFq(numerator; denominator; argument) evaluation."""

    numerator_params: Sequence = ()
    denominator_params: Sequence = ()
    argument: float = 0.0
    rel_tol: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "numerator_params", tuple(self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(self.denominator_params))
        for b in self.denominator_params:
            if _nonpositive_integer(b, POLE_TOL):
                raise DomainError(f"denominator parameter {b} is a nonpositive integer")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")

    @property
    def p(self) -> int:
        return len(self.numerator_params)

    @property
    def q(self) -> int:
        return len(self.denominator_params)

    @property
    def terminating(self) -> bool:
        return any(_nonpositive_integer(a) for a in self.numerator_params)


@dataclass(frozen=True)
class HypSeriesResult:
    value: float
    achieved_tol: float
    terms: int
    extended_precision: bool = False
    max_partial_sum: float = field(default=1.0, repr=False)

    def __float__(self) -> float:
        return self.value


def _check_convergence(a, b, z_abs_max: float) -> None:
    p, q = len(a), len(b)
    if any(_nonpositive_integer(x) for x in a) or z_abs_max == 0.0:
        return
    if p > q + 1:
        raise DivergenceError(f"{p}F{q} diverges for every nonzero argument")
    if p == q + 1:
        if z_abs_max > 1.0:
            raise DivergenceError(f"{p}F{q} diverges for |z| = {z_abs_max} > 1")
        if z_abs_max == 1.0 and not sum(map(float, b)) - sum(map(float, a)) > 0:
            raise DivergenceError(f"{p}F{q} diverges at |z| = 1 unless sum(b) - sum(a) > 0")


def _series(a, b, z: np.ndarray, rel_tol: float, max_terms: int):
    a_hi, a_lo = _hi_lo(a)
    b_hi, b_lo = _hi_lo(b)
    val, tail, nterms, maxp = _kernels.pfq_series(a_hi, b_hi, z, rel_tol, max_terms)
    extended = maxp > CANCELLATION_RATIO * np.abs(val)
    if extended.any():
        sub = np.nonzero(extended)[0]
        v2, t2, n2, m2 = _kernels.pfq_series_dd(a_hi, a_lo, b_hi, b_lo, z[sub], rel_tol, max_terms)
        val[sub], tail[sub], nterms[sub], maxp[sub] = v2, t2, n2, m2
    return val, tail, nterms, maxp, extended


def hyp_pfq(params: HypSeriesParams, max_terms: int = MAX_TERMS) -> HypSeriesResult:
    """Sum pFq(a; b; z) until three consecutive terms are negligible.

    A term counts as negligible when its magnitude, inflated by the geometric
    tail factor r/(1-r) of the current term ratio r, is below
    ``rel_tol * |partial sum|``.  If the largest partial sum exceeds the final
    value by more than 1e6 the sum is redone in double-double arithmetic.

    Raises
    ------
    DivergenceError
        p > q+1 with nonzero argument, |z| > 1 at p = q+1, or |z| = 1 with
        sum(b) - sum(a) <= 0.
    ConvergenceError
        ``max_terms`` terms were summed without meeting the stop rule.
    """
    z = float(params.argument)
    _check_convergence(params.numerator_params, params.denominator_params, abs(z))
    val, tail, nterms, maxp, ext = _series(
        params.numerator_params, params.denominator_params, np.array([z]), params.rel_tol, max_terms
    )
    if nterms[0] < 0:
        raise ConvergenceError(
            f"{params.p}F{params.q} at z={z} not converged after {-nterms[0]} terms "
            f"(estimated tail {tail[0]:.3g})"
        )
    return HypSeriesResult(float(val[0]), float(tail[0]), int(nterms[0]), bool(ext[0]), float(maxp[0]))


def pfq(a, b, z, rel_tol: float = 1e-12, max_terms: int = MAX_TERMS) -> np.ndarray:
    """Vectorised pFq over an array of arguments; returns values only."""
    z = np.atleast_1d(np.asarray(z, dtype=np.float64))
    for x in b:
        if _nonpositive_integer(x, POLE_TOL):
            raise DomainError(f"denominator parameter {x} is a nonpositive integer")
    if z.size == 0:
        return z.copy()
    _check_convergence(a, b, float(np.max(np.abs(z))))
    val, tail, nterms, _, _ = _series(a, b, z, rel_tol, max_terms)
    if (nterms < 0).any():
        bad = int(np.argmin(nterms))
        raise ConvergenceError(f"series not converged at z={z[bad]} after {-nterms[bad]} terms")
    return val

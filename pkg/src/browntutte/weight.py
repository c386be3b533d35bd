"""Numerical evaluation of the weights W_M(x) on the open support (0, R).

Two representations are used.  Below ``x/R = SWITCH`` the Slater sum of
hypergeometric series converges geometrically; above it the series slow down
to algebraic convergence at x = R, so the expansion in powers of (1 - x/R)
from :func:`browntutte.meijer.endpoint_expansion` takes over.  Both are kept
callable via ``method=`` so that they can be checked against each other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .combinatorics import SUPPORT_RADIUS, brown_tutte
from .errors import DomainError
from .meijer import endpoint_expansion, weight_representation, weight_spec
from .special import pfq

__all__ = [
    "weight",
    "weight_tilde",
    "leading_exponents",
    "SignChangeReport",
    "sign_scan",
    "endpoint_exponent_fit",
    "SWITCH",
]

R = float(SUPPORT_RADIUS)
SWITCH = 0.25
SERIES_TOL = 1e-16  # terms cancel across the Slater sum, so sum each series to full precision
ENDPOINT_TERMS = 128
EDGE_EPS = 1e-6


@lru_cache(maxsize=None)
def _endpoint(M: int):
    return endpoint_expansion(weight_spec(M), ENDPOINT_TERMS)


def _slater_sum(M: int, y: np.ndarray, rel_tol: float) -> np.ndarray:
    out = np.zeros_like(y)
    for term in weight_representation(M).terms:
        series = pfq(term.numerator_params, term.denominator_params, y, rel_tol)
        out += term.coefficient * y ** float(term.exponent) * series
    return out


def _endpoint_sum(M: int, y: np.ndarray) -> np.ndarray:
    exp = _endpoint(M)
    u = 1.0 - y
    poly = _kernels.horner(np.asarray(exp.coefficients), u)
    return y ** float(exp.anchor) * u ** float(exp.sigma - 1) * poly


def _weight_y(M: int, y: np.ndarray, method: str = "auto", rel_tol: float = SERIES_TOL) -> np.ndarray:
    if method == "slater":
        return _slater_sum(M, y, rel_tol)
    if method == "endpoint":
        return _endpoint_sum(M, y)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    out = np.empty_like(y)
    low = y < SWITCH
    if low.any():
        out[low] = _slater_sum(M, y[low], rel_tol)
    if (~low).any():
        out[~low] = _endpoint_sum(M, y[~low])
    return out


def _check_M(M):
    if isinstance(M, bool) or not isinstance(M, (int, np.integer)) or M < 0:
        raise DomainError(f"M must be a nonnegative int, got {M!r}")
    return int(M)


def weight(M: int, x, normalized: bool = False, method: str = "auto", rel_tol: float = SERIES_TOL):
    """W_M(x) for 0 < x < R; scalar in, float out, array in, array out.

    ``normalized=True`` divides by A(M, 0).  ``method`` selects ``"auto"``
    (default), ``"slater"`` or ``"endpoint"``.
    """
    M = _check_M(M)
    xa = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(xa).ravel()
    if not np.all((flat > 0.0) & (flat < R)):
        bad = flat[~((flat > 0.0) & (flat < R))][0]
        raise DomainError(f"weight needs 0 < x < R = {R}, got {bad}")
    vals = _weight_y(M, flat / R, method, rel_tol)
    if normalized:
        vals = vals / brown_tutte(M, 0)
    if xa.ndim == 0:
        return float(vals[0])
    return vals.reshape(xa.shape)


def weight_tilde(M: int, x, **kwargs):
    """Normalised weight W_M(x)/A(M, 0); its zeroth moment is 1."""
    return weight(M, x, normalized=True, **kwargs)


def leading_exponents(M: int) -> list[Fraction]:
    """Exponents of x in the surviving Slater terms, ascending."""
    return weight_representation(_check_M(M)).exponents


# ---------------------------------------------------------------------------
# sign structure

@dataclass
class SignChangeReport:
    M: int
    negative_intervals: list[tuple[float, float]]
    roots: list[float]
    grid_size: int
    lo: float = field(default=0.0, repr=False)
    hi: float = field(default=0.0, repr=False)

    @property
    def has_negative_part(self) -> bool:
        return bool(self.negative_intervals)

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "grid_size": self.grid_size,
            "roots": list(self.roots),
            "negative_intervals": [list(iv) for iv in self.negative_intervals],
        }


def _bisect_root(M: int, a: float, b: float, fa: float, xtol: float) -> float:
    while b - a > xtol:
        mid = 0.5 * (a + b)
        fm = weight(M, mid)
        if (fm < 0.0) == (fa < 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def sign_scan(M: int, grid_size: int = 2048) -> SignChangeReport:
    """Locate the sign changes of W_M on a uniform grid over [eps R, (1-eps) R].

    Each bracketed change is refined by bisection to width 1e-10 R.  Runs of
    negative grid values become ``negative_intervals``, closed off by the
    refined roots or by the grid ends.
    """
    M = _check_M(M)
    if grid_size < 16:
        raise DomainError("grid_size must be >= 16")
    lo, hi = EDGE_EPS * R, (1.0 - EDGE_EPS) * R
    xs = np.linspace(lo, hi, grid_size)
    neg = weight(M, xs) < 0.0
    roots, intervals = [], []
    start = lo if neg[0] else None
    for i in np.nonzero(neg[:-1] != neg[1:])[0]:
        r = _bisect_root(M, float(xs[i]), float(xs[i + 1]), -1.0 if neg[i] else 1.0, 1e-10 * R)
        roots.append(r)
        if neg[i + 1]:
            start = r
        else:
            intervals.append((start, r))
            start = None
    if start is not None:
        intervals.append((start, hi))
    return SignChangeReport(M, intervals, roots, grid_size, lo, hi)


def endpoint_exponent_fit(M: int, gaps=(1e-3, 1e-4, 1e-5)) -> float:
    """Slope of log|W_M| against log(R - x) close to x = R (diagnostic only)."""
    g = np.asarray(gaps, dtype=float)
    w = np.abs(weight(_check_M(M), R - g * R))
    slope, _ = np.polyfit(np.log(g), np.log(w), 1)
    return float(slope)

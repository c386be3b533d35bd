"""Positivity certificate from the gamma-ratio form of the moments.

The continued moments are r_W R**s times a product of four ratios
Gamma(s + a_i) / Gamma(s + b_i).  If the shifts can be paired so that every
b > a, each ratio is the Mellin transform of the positive density
x**a (1 - x)**(b - a - 1) / Gamma(b - a) on (0, 1), and W_M is a Mellin
convolution of positive functions.  A pair with b = a is an exact
cancellation: its ratio is 1, the transform of the unit mass at x = 1, which
is the identity of Mellin convolution and so harmless.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError
from .meijer import to_fraction

__all__ = [
    "ShiftLists",
    "shift_lists",
    "PositivityReport",
    "convolution_certificate",
    "check_pairing",
    "beta_factor_density",
    "CERTIFIED",
    "NOT_CERTIFIABLE",
]

CERTIFIED = "certified-positive"
NOT_CERTIFIABLE = "not-certifiable"


@dataclass(frozen=True)
class ShiftLists:
    numerators: tuple[Fraction, ...]
    denominators: tuple[Fraction, ...]

    def sorted(self) -> "ShiftLists":
        return ShiftLists(tuple(sorted(self.numerators)), tuple(sorted(self.denominators)))


def shift_lists(M: int) -> ShiftLists:
    """Gamma shifts of the moment ratio: Gamma(s + a) upstairs, Gamma(s + b) downstairs."""
    if isinstance(M, bool) or not isinstance(M, int) or M < 0:
        raise DomainError(f"M must be a nonnegative int, got {M!r}")
    half = Fraction(M, 2)
    third = Fraction(2 * M, 3)
    nums = (half - Fraction(1, 2), half - Fraction(1, 4), half, half + Fraction(1, 4))
    dens = (third + Fraction(1, 3), third + Fraction(2, 3), third + 1, Fraction(0))
    return ShiftLists(nums, dens)


@dataclass
class PositivityReport:
    M: int
    status: str
    pairing: list[tuple[Fraction, Fraction]]
    witness: Optional[tuple[int, Fraction, Fraction]] = None

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "status": self.status,
            "pairing": [[str(a), str(b)] for a, b in self.pairing],
            "witness": None if self.witness is None else
            {"index": self.witness[0], "a": str(self.witness[1]), "b": str(self.witness[2])},
        }


def convolution_certificate(M: int) -> PositivityReport:
    """Certify positivity of W_M by sorted elementwise dominance of the shifts.

    A bijection with b >= a on every pair exists iff the i-th smallest
    numerator shift is at most the i-th smallest denominator shift for all i.
    Equal pairs cancel exactly (M = 1 has the shift 0 in both lists); every
    other pair is strict.  On failure the first offending index is returned
    as the witness.
    """
    lists = shift_lists(M).sorted()
    pairs = list(zip(lists.numerators, lists.denominators))
    for i, (a, b) in enumerate(pairs):
        if not a <= b:
            return PositivityReport(M, NOT_CERTIFIABLE, [], (i, a, b))
    return PositivityReport(M, CERTIFIED, pairs)


def check_pairing(M: int, pairing) -> bool:
    """True iff ``pairing`` uses each shift of M exactly once and has b >= a throughout."""
    lists = shift_lists(M)
    pairs = [(to_fraction(a), to_fraction(b)) for a, b in pairing]
    if len(pairs) != len(lists.numerators):
        return False
    if sorted(a for a, _ in pairs) != sorted(lists.numerators):
        return False
    if sorted(b for _, b in pairs) != sorted(lists.denominators):
        return False
    return all(b >= a for a, b in pairs)


def beta_factor_density(a, b, x):
    """x**a (1 - x)**(b - a - 1) / Gamma(b - a) on 0 < x < 1, for b > a.

    Its Mellin transform is Gamma(s + a) / Gamma(s + b), so the n-th moment
    is Gamma(n + 1 + a) / Gamma(n + 1 + b).
    """
    a, b = float(a), float(b)
    if not b > a:
        raise DomainError(f"need b > a, got a={a}, b={b}")
    xa = np.asarray(x, dtype=float)
    if not np.all((xa > 0.0) & (xa < 1.0)):
        raise DomainError("beta_factor_density needs 0 < x < 1")
    out = xa**a * (1.0 - xa) ** (b - a - 1.0) / math.gamma(b - a)
    return float(out) if xa.ndim == 0 else out

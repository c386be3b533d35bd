"""Exact integer and rational quantities of the Brown-Tutte family.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`,
which is always kept in lowest terms with a positive denominator.
"""
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "brown_tutte",
    "brown_tutte_row",
    "catalan",
    "prefactor_P",
    "support_radius",
    "moment_tilde",
]

SUPPORT_RADIUS = Fraction(4**4, 3**3)


def _check_nonneg(**kwargs):
    for name, value in kwargs.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"{name} must be an int, got {type(value).__name__}")
        if value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")


def brown_tutte(M: int, n: int) -> int:
    """Return A(M, n) = 2(2M+3)!/((M+2)! M!) * (4n+2M+1)!/(n! (3n+2M+3)!).

    Numerator and denominator are formed as big integers and the division is
    checked to be exact; a remainder would mean an arithmetic bug, so it is
    an assertion rather than a recoverable error.
    """
    _check_nonneg(M=M, n=n)
    num = 2 * factorial(2 * M + 3) * factorial(4 * n + 2 * M + 1)
    den = factorial(M + 2) * factorial(M) * factorial(n) * factorial(3 * n + 2 * M + 3)
    q, r = divmod(num, den)
    assert r == 0, f"A({M}, {n}) is not an integer: remainder {r}"
    return q


def brown_tutte_row(M: int, count: int) -> list[int]:
    """First ``count`` values A(M, 0), ..., A(M, count-1)."""
    _check_nonneg(M=M, count=count)
    return [brown_tutte(M, n) for n in range(count)]


def catalan(n: int) -> int:
    _check_nonneg(n=n)
    q, r = divmod(comb(2 * n, n), n + 1)
    assert r == 0
    return q


def prefactor_P(M: int) -> Fraction:
    """P(M) = 2(2M+3)!/((M+2)! M!), the M-dependent constant of A(M, n)."""
    _check_nonneg(M=M)
    return Fraction(2 * factorial(2 * M + 3), factorial(M + 2) * factorial(M))


def support_radius() -> Fraction:
    """R = 4**4/3**3 = 256/27, the right end of the support for every M."""
    return SUPPORT_RADIUS


def moment_tilde(M: int, n: int) -> Fraction:
    """Moment of the normalised weight, A(M, n)/A(M, 0)."""
    return Fraction(brown_tutte(M, n), brown_tutte(M, 0))

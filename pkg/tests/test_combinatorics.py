from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from browntutte import brown_tutte, brown_tutte_row, catalan, moment_tilde, prefactor_P, support_radius
from browntutte.combinatorics import SUPPORT_RADIUS
from oracles import brown_tutte_recurrence, catalan_recurrence

PUBLISHED_ROWS = {
    0: [1, 1, 3, 13, 68, 399, 2530],
    1: [2, 5, 20, 100, 570, 3542],
    2: [5, 21, 105, 595, 3675, 24150],
    3: [14, 84, 504, 3192, 21252, 147420],
    4: [42, 330, 2310, 16170, 115500, 844074],
}


@pytest.mark.parametrize("M", sorted(PUBLISHED_ROWS))
def test_rows_match_published_lists(M):
    row = PUBLISHED_ROWS[M]
    assert brown_tutte_row(M, len(row)) == row


@pytest.mark.parametrize("M,n,value", [(0, 4, 68), (4, 0, 42), (2, 5, 24150)])
def test_examples(M, n, value):
    assert brown_tutte(M, n) == value


def test_against_recurrence_oracle():
    for M in range(11):
        assert brown_tutte_row(M, 41) == brown_tutte_recurrence(M, 41)


@given(st.integers(0, 30), st.integers(0, 60))
def test_integral_and_positive(M, n):
    a = brown_tutte(M, n)
    assert isinstance(a, int) and a > 0


@given(st.integers(0, 20), st.integers(1, 40))
def test_monotone_growth(M, n):
    assert brown_tutte(M, n + 1) > brown_tutte(M, n)


def test_catalan():
    assert catalan(0) == 1
    assert catalan(5) == comb(10, 5) // 6 == 42
    assert [catalan(n) for n in range(25)] == catalan_recurrence(25)


def test_catalan_boundary():
    for M in range(21):
        assert brown_tutte(M, 0) == catalan(M + 1)


def test_prefactor_P():
    assert prefactor_P(0) == 6
    assert prefactor_P(1) == 40
    for M in range(11):
        P = prefactor_P(M)
        assert isinstance(P, Fraction) and P.denominator == 1
        assert brown_tutte(M, 0) == P * Fraction(1, (2 * M + 3) * (2 * M + 2))


def test_support_radius():
    assert support_radius() == Fraction(256, 27) == SUPPORT_RADIUS
    assert float(support_radius()) == pytest.approx(9.481481481481481, rel=1e-15)


def test_growth_rate():
    # the term ratio tends to R like R (1 - 5/(2n) + ...); at n = 2000 it is within 0.2 %
    n = 2000
    ratio = Fraction(brown_tutte(0, n + 1), brown_tutte(0, n))
    assert abs(ratio / SUPPORT_RADIUS - 1) < 2e-3
    # the n-th root converges much more slowly (polynomial prefactor n**-5/2)
    root = brown_tutte(0, 200) ** (1 / 200)
    assert 0.9 < root / float(SUPPORT_RADIUS) < 1


def test_moment_tilde():
    assert moment_tilde(1, 1) == Fraction(5, 2)
    assert moment_tilde(2, 2) == 21
    for M in range(6):
        assert moment_tilde(M, 0) == 1


@pytest.mark.parametrize("bad", [(-1, 0), (0, -1), (1.5, 2), (True, 1)])
def test_rejects_bad_arguments(bad):
    with pytest.raises((TypeError, ValueError)):
        brown_tutte(*bad)

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from fractions import Fraction
from scipy import special as sp

from browntutte import HypSeriesParams, gamma, hyp_pfq, log_gamma_signed, pfq, pochhammer
from browntutte.errors import ConvergenceError, DivergenceError, DomainError, PoleError
from browntutte._kernels import dd_add, dd_div, dd_mul, two_prod, two_sum


def test_log_gamma_examples():
    g = log_gamma_signed(0.5)
    assert g.sign == 1 and g.log_abs == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)
    g = log_gamma_signed(5)
    assert g.sign == 1 and g.log_abs == pytest.approx(math.log(24), rel=1e-15)
    g = log_gamma_signed(-0.5)
    assert g.sign == -1 and g.log_abs == pytest.approx(math.log(2 * math.sqrt(math.pi)), rel=1e-14)


@given(st.floats(-50, 50))
def test_gamma_matches_reference(x):
    assume(abs(x - round(x)) > 1e-6 or x > 0)
    assume(x != 0)
    ref = sp.gamma(x)
    assert gamma(x) == pytest.approx(ref, rel=1e-13)


def test_reflection_sign():
    for x in (-0.5, -1.5, -2.5, -3.25, -10.1):
        assert log_gamma_signed(x).sign == np.sign(sp.gamma(x))
        # reflection formula oracle: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        assert gamma(x) * gamma(1 - x) == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-13)


@pytest.mark.parametrize("x", [0, -1, -7, Fraction(-3), -2.0 + 1e-14])
def test_poles(x):
    with pytest.raises(PoleError):
        log_gamma_signed(x)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("z", [0.3, 1.7, 5.2])
def test_gauss_legendre_multiplication(n, z):
    lhs = log_gamma_signed(n * z).log_abs
    rhs = (1 - n) / 2 * math.log(2 * math.pi) + (n * z - 0.5) * math.log(n)
    rhs += sum(log_gamma_signed(z + j / n).log_abs for j in range(n))
    assert math.exp(lhs - rhs) == pytest.approx(1.0, abs=1e-11)


def test_pochhammer_examples():
    assert pochhammer(2.5, 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(0, 3) == 0
    assert pochhammer(Fraction(-2), 5) == 0
    assert pochhammer(Fraction(-2), 2) == 2


@given(st.floats(-20, 20), st.integers(0, 15))
def test_pochhammer_gamma_consistency(a, k):
    assume(abs(a - round(a)) > 1e-3 and abs(a + k - round(a + k)) > 1e-3)
    ga, gak = log_gamma_signed(a), log_gamma_signed(a + k)
    via_gamma = gak.sign * ga.sign * math.exp(gak.log_abs - ga.log_abs)
    assert pochhammer(a, k) == pytest.approx(via_gamma, rel=1e-11)


def test_2f1_log():
    r = hyp_pfq(HypSeriesParams((1, 1), (2,), 0.5))
    assert r.value == pytest.approx(2 * math.log(2), rel=1e-12)
    assert r.achieved_tol <= 1e-12


def test_argument_zero():
    assert hyp_pfq(HypSeriesParams((0.3, 1.2, 7), (0.5, 2.5), 0.0)).value == 1.0
    assert hyp_pfq(HypSeriesParams((1, 2, 3, 4, 5), (6,), 0.0)).value == 1.0  # p > q+1 is fine at 0


@pytest.mark.parametrize("a", [0.25, 1.5])
@pytest.mark.parametrize("z", [0.5, -0.5])
def test_1f0_binomial(a, z):
    assert hyp_pfq(HypSeriesParams((a,), (), z)).value == pytest.approx((1 - z) ** (-a), rel=1e-11)


def test_0f0_exp_uses_extended_precision():
    r = hyp_pfq(HypSeriesParams((), (), -20.0))
    assert r.extended_precision
    assert r.value == pytest.approx(math.exp(-20.0), rel=1e-12)


def test_1f1_against_scipy():
    for a, b, z in [(0.5, 1.5, 3.0), (-0.3, 2.2, -4.0), (2.0, 0.7, 1.2)]:
        assert hyp_pfq(HypSeriesParams((a,), (b,), z)).value == pytest.approx(sp.hyp1f1(a, b, z), rel=1e-12)


def test_2f1_against_scipy_vectorised():
    z = np.linspace(-0.9, 0.9, 19)
    ref = sp.hyp2f1(0.25, 1.75, 2.5, z)
    np.testing.assert_allclose(pfq((0.25, 1.75), (2.5,), z), ref, rtol=1e-12)


def test_terminating_series():
    # 2F1(-3, b; c; z) is a cubic, fine for any z
    b, c, z = 1.5, 2.0, 7.0
    expect = sum(pochhammer(-3, k) * pochhammer(b, k) / pochhammer(c, k) * z**k / math.factorial(k) for k in range(4))
    assert hyp_pfq(HypSeriesParams((Fraction(-3), b), (c,), z)).value == pytest.approx(expect, rel=1e-14)


def test_unit_argument_gauss():
    # 2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) with c-a-b = 1.5
    a, b, c = 0.5, 0.5, 2.5
    expect = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
    r = hyp_pfq(HypSeriesParams((a, b), (c,), 1.0, rel_tol=1e-7))
    assert r.value == pytest.approx(expect, rel=1e-5)


def test_divergence_errors():
    with pytest.raises(DivergenceError):
        hyp_pfq(HypSeriesParams((1, 1, 1), (1,), 0.1))
    with pytest.raises(DivergenceError):
        hyp_pfq(HypSeriesParams((1, 1), (1,), 1.5))
    with pytest.raises(DivergenceError):
        hyp_pfq(HypSeriesParams((1, 1), (1.5,), 1.0))


def test_convergence_error_on_term_cap():
    with pytest.raises(ConvergenceError):
        hyp_pfq(HypSeriesParams((0.5, 0.5), (2.5,), 1.0, rel_tol=1e-14), max_terms=1000)


def test_bad_denominator():
    with pytest.raises(DomainError):
        HypSeriesParams((1,), (Fraction(-2),), 0.5)


def _alternating(n):
    return [(-1) ** k * (1.0 + 1e-9 * k) * 10.0 ** (8 - (k % 17)) for k in range(n)]


def test_compensated_summation_beats_plain():
    # the Neumaier update used by the series kernels
    terms = _alternating(5000)
    exact = sum(Fraction(t) for t in terms)
    plain = 0.0
    for t in terms:
        plain += t
    s, c = 0.0, 0.0
    for t in terms:
        tot = s + t
        c += (s - tot) + t if abs(s) >= abs(t) else (t - tot) + s
        s = tot
    assert abs(Fraction(s + c) - exact) <= abs(Fraction(plain) - exact)


def test_double_double_primitives():
    s, e = two_sum(1.0, 1e-20)
    assert s == 1.0 and e == 1e-20
    p, e = two_prod(1.0 + 2**-30, 1.0 + 2**-30)
    assert Fraction(p) + Fraction(e) == Fraction(1.0 + 2**-30) ** 2
    third_hi, third_lo = dd_div(1.0, 0.0, 3.0, 0.0)
    assert abs(Fraction(third_hi) + Fraction(third_lo) - Fraction(1, 3)) < Fraction(1, 10**31)
    h, lo = dd_mul(third_hi, third_lo, 3.0, 0.0)
    h, lo = dd_add(h, lo, -1.0, 0.0)
    assert abs(h + lo) < 1e-31

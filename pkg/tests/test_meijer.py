import json
import math
from fractions import Fraction as F

import pytest

from browntutte import (
    MeijerGSpec,
    WeightRepresentation,
    brown_tutte,
    delta_list,
    ogf_spec,
    prefactor_rg,
    prefactor_rw,
    ratio_rg_rw,
    reshuffle_ogf_to_weight,
    slater_decompose,
    support_radius,
    weight_representation,
    weight_spec,
)
from browntutte.errors import SpecError
from browntutte.meijer import endpoint_expansion

PI = math.pi
S2 = math.sqrt(2)

# normalised small-x expansions: (x-coefficient, exponent, numerator params, denominator params)
PUBLISHED_TERMS = {
    0: [
        (2 / PI, F(-1, 2), ("-1/2", "-1/6", "1/6"), ("1/4", "3/4")),
        (-S2 / PI, F(-1, 4), ("-1/4", "1/12", "5/12"), ("1/2", "5/4")),
        (S2 / (32 * PI), F(1, 4), ("1/4", "7/12", "11/12"), ("3/2", "7/4")),
    ],
    1: [
        (2 * S2 / PI, F(1, 4), ("-5/12", "-1/12", "1/4"), ("1/2", "3/4")),
        (-5 / (2 * PI), F(1, 2), ("-1/6", "1/6", "1/2"), ("3/4", "5/4")),
        (5 * S2 / (16 * PI), F(3, 4), ("1/12", "5/12", "3/4"), ("5/4", "3/2")),
    ],
    2: [
        (-14 / (5 * PI), F(1, 2), ("-5/6", "-1/2", "-1/6", "3/2"), ("1/4", "1/2", "3/4")),
        (3 * S2 / PI, F(3, 4), ("-7/12", "-1/4", "1/12", "7/4"), ("1/2", "3/4", "5/4")),
        (-35 * S2 / (32 * PI), F(5, 4), ("-1/12", "1/4", "7/12", "9/4"), ("5/4", "3/2", "7/4")),
    ],
    3: [
        (-4 * S2 / PI, F(5, 4), ("-3/4", "-5/12", "-1/12", "9/4"), ("1/2", "3/4", "5/4")),
        (9 / PI, F(3, 2), ("-1/2", "-1/6", "1/6", "5/2"), ("3/4", "5/4", "3/2")),
        (-21 * S2 / (8 * PI), F(7, 4), ("-1/4", "1/12", "5/12", "11/4"), ("5/4", "3/2", "7/4")),
    ],
}


def fr(seq):
    return tuple(sorted(F(s) for s in seq))


def test_delta_list():
    assert delta_list(4, -2).values == (F(-1, 2), F(-1, 4), F(0), F(1, 4))
    assert delta_list(3, 7).values == (F(7, 3), F(8, 3), F(3))
    assert delta_list(1, F(5, 7)).values == (F(5, 7),)
    d = delta_list(5, 3)
    assert len(d) == 5 and all(b - a == F(1, 5) for a, b in zip(d.values, d.values[1:]))
    with pytest.raises(ValueError):
        delta_list(0, 1)


def test_weight_spec_lists():
    s0 = weight_spec(0)
    assert sorted(s0.alpha) == [0, F(1, 3), F(2, 3), 1]
    assert sorted(s0.beta) == [F(-1, 2), F(-1, 4), 0, F(1, 4)]
    assert weight_spec(2).beta == (F(1, 2), F(3, 4), 1, F(5, 4))
    s1 = weight_spec(1)
    assert {1, F(4, 3), F(5, 3)} <= set(s1.alpha) and s1.beta == (0, F(1, 4), F(1, 2), F(3, 4))
    for M in range(21):
        s = weight_spec(M)
        assert s.alpha == (0,) + delta_list(3, 2 * M + 1).values
        assert s.beta == delta_list(4, 2 * M - 2).values
        assert (s.m, s.n, s.p, s.q, s.arg_sign) == (4, 0, 4, 4, 1)
        assert s.arg_scale == 1 / support_radius()
        assert s.c_star == 0


def test_ogf_spec():
    g0 = ogf_spec(0)
    assert g0.alpha == (0, F(1, 3), F(2, 3), 1) and g0.alpha_brackets[0] == [0]
    assert ogf_spec(1).beta == (0, F(1, 4), F(1, 2), F(3, 4))
    for M in range(6):
        g = ogf_spec(M)
        assert (g.m, g.n, g.arg_sign) == (4, 1, -1)
        assert g.prefactor == pytest.approx(-prefactor_rg(M) / float(support_radius()), rel=1e-15)
        # r_G / R = r_W, so the generating-function constant is just -r_W
        assert g.prefactor == pytest.approx(-prefactor_rw(M), rel=1e-14)


def test_prefactors():
    assert ratio_rg_rw() == F(256, 27) == support_radius()
    assert prefactor_rw(0) == pytest.approx(6 * math.sqrt(6) / (192 * math.sqrt(math.pi)), rel=1e-15)
    # 6 sqrt(6) / (192 sqrt(pi)) = 0.04318677..., a quoted 0.0431896 is off in the 5th digit
    assert prefactor_rw(0) == pytest.approx(0.0431867687, rel=1e-9)
    for M in range(8):
        assert prefactor_rg(M) / prefactor_rw(M) == pytest.approx(256 / 27, rel=1e-14)


def test_reshuffle_round_trip():
    for M in range(21):
        out = reshuffle_ogf_to_weight(ogf_spec(M))
        assert out.same_structure(weight_spec(M))
        assert out.beta == ogf_spec(M).beta
        assert out.prefactor == pytest.approx(prefactor_rw(M), rel=1e-15)


def test_reshuffle_rejects_malformed():
    with pytest.raises(SpecError):
        reshuffle_ogf_to_weight(weight_spec(0))
    bad = MeijerGSpec(4, 1, 4, 4, (F(1, 2), 1, 2, 3), ogf_spec(0).beta, arg_sign=-1)
    with pytest.raises(SpecError):
        reshuffle_ogf_to_weight(bad)


@pytest.mark.parametrize("M", sorted(PUBLISHED_TERMS))
def test_slater_matches_published_terms(M):
    rep = weight_representation(M, normalized=True)
    assert len(rep.terms) == 3
    for term, (coef, exp, num, den) in zip(rep.terms, PUBLISHED_TERMS[M]):
        assert term.exponent == exp
        assert tuple(sorted(term.numerator_params)) == fr(num)
        assert tuple(sorted(term.denominator_params)) == fr(den)
        assert term.x_coefficient() == pytest.approx(coef, rel=1e-12)


def test_slater_dropped_terms():
    rep = weight_representation(2)
    assert [d.exponent for d in rep.dropped] == [1]
    assert "Gamma(-1)" in rep.dropped[0].reason
    assert rep.exponents == [F(1, 2), F(3, 4), F(5, 4)]
    assert rep.terms[0].coefficient < 0
    assert weight_representation(1).exponents == [F(1, 4), F(1, 2), F(3, 4)]
    for M in range(11):
        r = weight_representation(M)
        assert len(r.terms) == 3 and len(r.dropped) == 1
        for t in r.terms:
            assert not set(t.numerator_params) & set(t.denominator_params)


def test_slater_rejects_integer_spaced_beta():
    spec = MeijerGSpec(2, 0, 2, 2, (F(1, 2), F(1, 3)), (F(0), F(1)))
    with pytest.raises(SpecError):
        slater_decompose(spec)


def test_serialisation_round_trip():
    for M in (0, 2, 5):
        s = weight_spec(M)
        assert MeijerGSpec.from_dict(json.loads(json.dumps(s.to_dict()))) == s
        rep = weight_representation(M)
        assert WeightRepresentation.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep
        d = s.to_dict()
        assert list(d) == ["m", "n", "p", "q", "alpha", "beta", "prefactor", "arg_scale", "arg_sign"]


def test_normalize_divides_by_a0():
    raw, norm = weight_representation(4), weight_representation(4, normalized=True)
    for a, b in zip(raw.terms, norm.terms):
        assert b.coefficient == pytest.approx(a.coefficient / 42, rel=1e-15)
    assert norm.normalize() is norm


def test_minimum_beta_bound():
    # the classical strip bound -min(beta) evaluates to 1/2 - M/2, not 1/4 - M/2
    for M in range(11):
        assert -min(weight_spec(M).beta) == F(1, 2) - F(M, 2)


def test_endpoint_expansion_exact_start():
    exp = endpoint_expansion(weight_spec(0), terms=16)
    assert exp.sigma == F(5, 2)  # W ~ (R - x)**(sigma - 1) = (R - x)**(3/2)
    assert exp.anchor == F(1, 4)
    assert exp.exact[0] == 1
    assert all(isinstance(c, F) for c in exp.exact)

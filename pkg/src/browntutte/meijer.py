"""Meijer-G parameter data for the weight and the generating function.

Parameter lists are exact :class:`~fractions.Fraction` values so that pole
and cancellation tests are exact; only coefficients are floats.

Conventions follow the bracketed notation
``MeijerG([[a_1..a_n], [a_{n+1}..a_p]], [[b_1..b_m], [b_{m+1}..b_q]], arg)``:
the first ``n`` entries of ``alpha`` and the first ``m`` entries of ``beta``
form the leading brackets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .combinatorics import SUPPORT_RADIUS, brown_tutte, prefactor_P
from .errors import SpecError
from .special import log_gamma_signed

__all__ = [
    "DeltaList",
    "delta_list",
    "MeijerGSpec",
    "weight_spec",
    "ogf_spec",
    "reshuffle_ogf_to_weight",
    "prefactor_rw",
    "prefactor_rg",
    "ratio_rg_rw",
    "HypTerm",
    "DroppedTerm",
    "WeightRepresentation",
    "slater_decompose",
    "weight_representation",
    "EndpointExpansion",
    "endpoint_expansion",
    "to_fraction",
]


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction or string such as ``'-1/2'`` into a Fraction."""
    if isinstance(value, str):
        return Fraction(value.replace("−", "-").strip())
    if isinstance(value, float):
        raise TypeError("parameter lists are exact; pass a Fraction or a string")
    return Fraction(value)


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x <= 0 and x.denominator == 1


# ---------------------------------------------------------------------------
# Delta lists and specs

@dataclass(frozen=True)
class DeltaList:
    k: int
    a: Fraction
    values: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return self.k


def delta_list(k: int, a) -> DeltaList:
    """The k-element list a/k, (a+1)/k, ..., (a+k-1)/k."""
    if k < 1:
        raise ValueError(f"delta_list needs k >= 1, got {k}")
    a = to_fraction(a)
    return DeltaList(k, a, tuple((a + i) / k for i in range(k)))


@dataclass(frozen=True)
class MeijerGSpec:
    """Data of ``prefactor * G^{m,n}_{p,q}(arg_sign * arg_scale * x | alpha; beta)``."""

    m: int
    n: int
    p: int
    q: int
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    prefactor: float = 1.0
    arg_scale: Fraction = Fraction(1)
    arg_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(to_fraction(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(to_fraction(b) for b in self.beta))
        object.__setattr__(self, "arg_scale", to_fraction(self.arg_scale))
        if len(self.alpha) != self.p or len(self.beta) != self.q:
            raise SpecError("alpha/beta lengths must equal p/q")
        if not (0 <= self.m <= self.q and 0 <= self.n <= self.p):
            raise SpecError(f"need 0 <= m <= q and 0 <= n <= p, got m={self.m} n={self.n}")
        if self.arg_sign not in (1, -1):
            raise SpecError("arg_sign must be +1 or -1")

    @property
    def c_star(self) -> Fraction:
        return self.m + self.n - Fraction(self.p + self.q, 2)

    @property
    def alpha_brackets(self):
        return list(self.alpha[: self.n]), list(self.alpha[self.n :])

    @property
    def beta_brackets(self):
        return list(self.beta[: self.m]), list(self.beta[self.m :])

    def same_structure(self, other: "MeijerGSpec") -> bool:
        """Equal indices, alpha brackets as multisets, beta lists and argument."""
        return (
            (self.m, self.n, self.p, self.q) == (other.m, other.n, other.p, other.q)
            and sorted(self.alpha[: self.n]) == sorted(other.alpha[: other.n])
            and sorted(self.alpha[self.n :]) == sorted(other.alpha[other.n :])
            and self.beta == other.beta
            and self.arg_scale == other.arg_scale
            and self.arg_sign == other.arg_sign
        )

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "alpha": [str(a) for a in self.alpha],
            "beta": [str(b) for b in self.beta],
            "prefactor": self.prefactor,
            "arg_scale": str(self.arg_scale),
            "arg_sign": self.arg_sign,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MeijerGSpec":
        return cls(
            m=int(d["m"]),
            n=int(d["n"]),
            p=int(d["p"]),
            q=int(d["q"]),
            alpha=tuple(to_fraction(a) for a in d["alpha"]),
            beta=tuple(to_fraction(b) for b in d["beta"]),
            prefactor=float(d["prefactor"]),
            arg_scale=to_fraction(d["arg_scale"]),
            arg_sign=int(d["arg_sign"]),
        )


# The two prefactors share 3^(1/2-2M) 2^(4M+1/2) P(M)/sqrt(pi); they differ by
# these rational factors, which is what makes their ratio exact.
_RW_RATIONAL = Fraction(1, 192)
_RG_RATIONAL = Fraction(4, 81)


def _common_factor(M: int) -> float:
    log = (0.5 - 2 * M) * math.log(3) + (4 * M + 0.5) * math.log(2) - 0.5 * math.log(math.pi)
    return math.exp(log) * float(prefactor_P(M))


def prefactor_rw(M: int) -> float:
    """Constant in front of the weight's G^{4,0}_{4,4}."""
    return float(_RW_RATIONAL) * _common_factor(M)


def prefactor_rg(M: int) -> float:
    """Constant in front of the generating function's G^{1,4}_{4,4}."""
    return float(_RG_RATIONAL) * _common_factor(M)


def ratio_rg_rw() -> Fraction:
    """r_G(M)/r_W(M), exact: the irrational and M-dependent factors cancel."""
    return _RG_RATIONAL / _RW_RATIONAL


def _l1(M: int) -> tuple[Fraction, ...]:
    return delta_list(3, 2 * M + 1).values


def _l2(M: int) -> tuple[Fraction, ...]:
    return delta_list(4, 2 * M - 2).values


def weight_spec(M: int) -> MeijerGSpec:
    """W_M(x) = r_W(M) G^{4,0}_{4,4}(x/R | 0, Delta(3,2M+1); Delta(4,2M-2))."""
    if M < 0:
        raise ValueError("M must be >= 0")
    return MeijerGSpec(
        m=4, n=0, p=4, q=4,
        alpha=(Fraction(0),) + _l1(M),
        beta=_l2(M),
        prefactor=prefactor_rw(M),
        arg_scale=1 / SUPPORT_RADIUS,
        arg_sign=1,
    )


def ogf_spec(M: int) -> MeijerGSpec:
    """(1/z) G(M, 1/z) = -(r_G(M)/R) G^{4,1}_{4,4}(-z/R | [0], L1; L2)."""
    if M < 0:
        raise ValueError("M must be >= 0")
    return MeijerGSpec(
        m=4, n=1, p=4, q=4,
        alpha=(Fraction(0),) + _l1(M),
        beta=_l2(M),
        prefactor=-prefactor_rg(M) / float(SUPPORT_RADIUS),
        arg_scale=1 / SUPPORT_RADIUS,
        arg_sign=-1,
    )


def _family_index(beta: Sequence[Fraction]) -> int:
    M2 = 2 * beta[0] + 1
    if M2.denominator != 1 or M2 < 0 or tuple(beta) != _l2(int(M2)):
        raise SpecError(f"beta list {list(map(str, beta))} is not Delta(4, 2M-2) for any M >= 0")
    return int(M2)


def reshuffle_ogf_to_weight(spec: MeijerGSpec) -> MeijerGSpec:
    """Move the 0 out of the generating function's n-bracket to obtain the weight.

    The 0 joins L1 in the trailing alpha bracket, L2 stays where it is, the
    argument -z/R becomes x/R and the constant becomes r_W(M).
    """
    if (spec.m, spec.n, spec.p, spec.q) != (4, 1, 4, 4):
        raise SpecError("reshuffle expects a G^{4,1}_{4,4} spec")
    if spec.alpha[0] != 0:
        raise SpecError("the n-bracket of alpha must hold the parameter 0")
    M = _family_index(spec.beta)
    return replace(
        spec,
        n=0,
        alpha=(Fraction(0),) + tuple(spec.alpha[1:]),
        prefactor=prefactor_rw(M),
        arg_sign=1,
    )


# ---------------------------------------------------------------------------
# Slater decomposition

@dataclass(frozen=True)
class HypTerm:
    """coefficient * y**exponent * pFq(numerator_params; denominator_params; y), y = x/R."""

    coefficient: float
    exponent: Fraction
    numerator_params: tuple[Fraction, ...]
    denominator_params: tuple[Fraction, ...]

    def x_coefficient(self) -> float:
        """Coefficient of x**exponent once (x/R)**exponent is expanded."""
        return self.coefficient * float(SUPPORT_RADIUS) ** (-float(self.exponent))

    def to_dict(self) -> dict:
        return {
            "coefficient": self.coefficient,
            "exponent": str(self.exponent),
            "num_params": [str(a) for a in self.numerator_params],
            "den_params": [str(b) for b in self.denominator_params],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HypTerm":
        return cls(
            float(d["coefficient"]),
            to_fraction(d["exponent"]),
            tuple(to_fraction(a) for a in d["num_params"]),
            tuple(to_fraction(b) for b in d["den_params"]),
        )


@dataclass(frozen=True)
class DroppedTerm:
    exponent: Fraction
    reason: str

    def to_dict(self) -> dict:
        return {"exponent": str(self.exponent), "reason": self.reason}


@dataclass(frozen=True)
class WeightRepresentation:
    M: int | None
    terms: tuple[HypTerm, ...]
    normalized: bool = False
    dropped: tuple[DroppedTerm, ...] = field(default=())

    @property
    def exponents(self) -> list[Fraction]:
        return [t.exponent for t in self.terms]

    def normalize(self) -> "WeightRepresentation":
        """Divide every coefficient by A(M, 0)."""
        if self.normalized:
            return self
        if self.M is None:
            raise SpecError("normalisation needs the family index M")
        a0 = brown_tutte(self.M, 0)
        terms = tuple(replace(t, coefficient=t.coefficient / a0) for t in self.terms)
        return replace(self, terms=terms, normalized=True)

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "normalized": self.normalized,
            "terms": [t.to_dict() for t in self.terms],
            "dropped": [d.to_dict() for d in self.dropped],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WeightRepresentation":
        return cls(
            M=d["M"],
            terms=tuple(HypTerm.from_dict(t) for t in d["terms"]),
            normalized=bool(d["normalized"]),
            dropped=tuple(DroppedTerm(to_fraction(x["exponent"]), x["reason"]) for x in d["dropped"]),
        )


def _cancel(num: list[Fraction], den: list[Fraction]):
    num, den = list(num), list(den)
    for b in list(den):
        if b in num:
            num.remove(b)
            den.remove(b)
    return tuple(sorted(num)), tuple(sorted(den))


def slater_decompose(spec: MeijerGSpec, M: int | None = None) -> WeightRepresentation:
    """Expand a G^{q,0}_{q,q} as a sum of residue series, one per beta_k.

    Term k has coefficient prod_{j!=k} Gamma(beta_j - beta_k) /
    prod_j Gamma(alpha_j - beta_k), exponent beta_k, numerator parameters
    1 + beta_k - alpha_j and denominator parameters 1 + beta_k - beta_j
    (j != k).  A term whose coefficient has a Gamma pole in the denominator is
    identically zero and is recorded in ``dropped``; parameters common to both
    lists are cancelled.
    """
    if not (spec.m == spec.p == spec.q and spec.n == 0):
        raise SpecError("slater_decompose handles G^{q,0}_{q,q} only")
    alpha, beta = spec.alpha, spec.beta
    for i in range(len(beta)):
        for j in range(i + 1, len(beta)):
            if (beta[i] - beta[j]).denominator == 1:
                raise SpecError(
                    f"beta entries {beta[i]} and {beta[j]} differ by an integer; "
                    "logarithmic case not supported"
                )
    terms, dropped = [], []
    for k, bk in enumerate(beta):
        poles = [a - bk for a in alpha if _is_nonpositive_integer(a - bk)]
        if poles:
            dropped.append(DroppedTerm(bk, f"1/Gamma({poles[0]}) = 0"))
            continue
        log_abs, sign = 0.0, 1
        for j, bj in enumerate(beta):
            if j != k:
                lg = log_gamma_signed(bj - bk)
                log_abs += lg.log_abs
                sign *= lg.sign
        for a in alpha:
            lg = log_gamma_signed(a - bk)
            log_abs -= lg.log_abs
            sign *= lg.sign
        num, den = _cancel([1 + bk - a for a in alpha], [1 + bk - bj for j, bj in enumerate(beta) if j != k])
        terms.append(HypTerm(sign * math.exp(log_abs) * spec.prefactor, bk, num, den))
    terms.sort(key=lambda t: t.exponent)
    return WeightRepresentation(M=M, terms=tuple(terms), normalized=False, dropped=tuple(dropped))


@lru_cache(maxsize=None)
def weight_representation(M: int, normalized: bool = False) -> WeightRepresentation:
    rep = slater_decompose(weight_spec(M), M=M)
    return rep.normalize() if normalized else rep


# ---------------------------------------------------------------------------
# Expansion about the right end of the support

@dataclass(frozen=True)
class EndpointExpansion:
    """prefactor * G = y**anchor * (1-y)**(sigma-1) * sum_k coefficients[k] (1-y)**k.

    ``exact`` holds the rational inverse-factorial coefficients c_k, with
    coefficients[k] = prefactor * c_k / Gamma(sigma + k).
    """

    anchor: Fraction
    sigma: Fraction
    coefficients: tuple[float, ...]
    exact: tuple[Fraction, ...]


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


def _bernoulli_poly(n: int, x: Fraction, B) -> Fraction:
    acc = Fraction(0)
    for k in range(n + 1):
        acc = acc * x + comb(n, k) * B[k]
    return acc


@lru_cache(maxsize=None)
def _stirling2_table(n: int):
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1]
    return S


def endpoint_expansion(spec: MeijerGSpec, terms: int = 64) -> EndpointExpansion:
    """Convergent expansion of a G^{q,0}_{q,q} about y = 1 (valid on 0 < y < 2).

    The Mellin kernel prod Gamma(s+beta_j)/Gamma(s+alpha_j) is written as an
    inverse factorial series sum_k c_k Gamma(s+b)/Gamma(s+b+sigma+k), with
    b = max(beta) and sigma = sum(alpha) - sum(beta); each term inverts to a
    Beta-type density.  The c_k come from the large-s expansion of the log of
    the gamma ratio (Bernoulli polynomials), exponentiated and re-expanded in
    the basis 1/(t)_k via Stirling numbers of the second kind, all in exact
    rational arithmetic.
    """
    if not (spec.m == spec.p == spec.q and spec.n == 0):
        raise SpecError("endpoint expansion handles G^{q,0}_{q,q} only")
    sigma = sum(spec.alpha) - sum(spec.beta)
    if sigma <= 0:
        raise SpecError(f"sum(alpha) - sum(beta) = {sigma} must be positive")
    K = terms
    anchor = max(spec.beta)
    shift = anchor + sigma
    up = [b - shift for b in spec.beta] + [Fraction(0)]
    down = [a - shift for a in spec.alpha] + [-sigma]
    B = _bernoulli(K + 1)
    log_coef = [Fraction(0)] * (K + 1)
    for n in range(1, K + 1):
        diff = sum(_bernoulli_poly(n + 1, a, B) for a in up) - sum(_bernoulli_poly(n + 1, b, B) for b in down)
        log_coef[n] = Fraction((-1) ** (n + 1), n * (n + 1)) * diff
    d = [Fraction(0)] * (K + 1)
    d[0] = Fraction(1)
    for n in range(1, K + 1):
        d[n] = sum(k * log_coef[k] * d[n - k] for k in range(1, n + 1)) / n
    S = _stirling2_table(K)
    c = [Fraction(0)] * K
    c[0] = d[0]
    for j in range(1, K):
        c[j] = d[j] - sum(c[k] * (-1) ** (j - k) * S[j - 1][k - 1] for k in range(1, j))
    gamma_sigma = math.gamma(float(sigma))
    coeffs = []
    rising = Fraction(1)
    for k in range(K):
        coeffs.append(spec.prefactor * float(c[k] / rising) / gamma_sigma)
        rising *= sigma + k
    return EndpointExpansion(anchor, sigma, tuple(coeffs), tuple(c))

"""Hot inner loops: hypergeometric partial sums and polynomial evaluation.

Every kernel exists twice, a scalar-loop version compiled with numba and a
numpy version vectorised over the argument array.  ``BACKEND`` in
:mod:`browntutte._backend` picks which one the public dispatchers call; the
benchmark imports both directly.

Kernel contract for the series kernels: ``a`` and ``b`` hold the numerator and
denominator parameters, ``z`` a 1-d float64 array of arguments.  Each returns
``(value, rel_tail, nterms, max_partial)`` per argument, where ``rel_tail`` is
the estimated truncated tail relative to ``|value|`` and ``nterms`` is
negative when ``max_terms`` was hit before the stop rule fired.
"""
import types

import numpy as np

from ._backend import BACKEND, HAVE_NUMBA, njit

SMALL_RUN = 3  # consecutive negligible terms before stopping
_SPLITTER = 134217729.0  # 2**27 + 1


# ---------------------------------------------------------------------------
# double-double primitives; branch-free so they work on scalars and arrays

def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    err = b - (s - a)
    return s, err


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = dd_mul(q1, 0.0 * q1, bh, bl)
    rh, rl = dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = dd_mul(q2, 0.0 * q2, bh, bl)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return dd_add(q1, q2, q3, 0.0 * q3)


# ---------------------------------------------------------------------------
# numpy implementations

def _tail_estimate(term, ratio):
    aterm = np.abs(term)
    ar = np.abs(ratio)
    with np.errstate(divide="ignore", invalid="ignore"):
        geo = np.where(ar < 1.0, ar / (1.0 - ar), np.inf)
    est = aterm * np.maximum(geo, 1.0)
    return np.where(aterm == 0.0, 0.0, est)


def pfq_series_numpy(a, b, z, tol, max_terms):
    z = np.asarray(z, dtype=np.float64)
    n = z.shape[0]
    s = np.ones(n)
    c = np.zeros(n)
    term = np.ones(n)
    small = np.zeros(n, dtype=np.int64)
    nterms = np.zeros(n, dtype=np.int64)
    maxp = np.ones(n)
    tail = np.zeros(n)
    active = np.ones(n, dtype=bool)
    k = 0
    while k < max_terms and active.any():
        idx = np.nonzero(active)[0]
        zi = z[idx]
        num = zi.copy()
        for x in a:
            num *= x + k
        den = float(k + 1)
        for x in b:
            den *= x + k
        ratio = num / den
        t = term[idx] * ratio
        si = s[idx]
        tot = si + t
        c[idx] += np.where(np.abs(si) >= np.abs(t), (si - tot) + t, (t - tot) + si)
        s[idx] = tot
        term[idx] = t
        k += 1
        total = tot + c[idx]
        maxp[idx] = np.maximum(maxp[idx], np.abs(total))
        est = _tail_estimate(t, ratio)
        ok = est <= tol * np.abs(total)
        sm = np.where(ok, small[idx] + 1, 0)
        small[idx] = sm
        with np.errstate(divide="ignore", invalid="ignore"):
            tail[idx] = np.where(total != 0.0, est / np.abs(total), np.where(est == 0.0, 0.0, np.inf))
        finished = sm >= SMALL_RUN
        nterms[idx[finished]] = k
        active[idx[finished]] = False
    nterms[active] = -k
    return s + c, tail, nterms, maxp


def pfq_series_dd_numpy(a_hi, a_lo, b_hi, b_lo, z, tol, max_terms):
    z = np.asarray(z, dtype=np.float64)
    n = z.shape[0]
    sh = np.ones(n)
    sl = np.zeros(n)
    th = np.ones(n)
    tl = np.zeros(n)
    small = np.zeros(n, dtype=np.int64)
    nterms = np.zeros(n, dtype=np.int64)
    maxp = np.ones(n)
    tail = np.zeros(n)
    active = np.ones(n, dtype=bool)
    k = 0
    while k < max_terms and active.any():
        idx = np.nonzero(active)[0]
        nh = z[idx].copy()
        nl = np.zeros(idx.shape[0])
        for ah, al in zip(a_hi, a_lo):
            fh, fl = two_sum(ah, float(k))
            fh, fl = quick_two_sum(fh, fl + al)
            nh, nl = dd_mul(nh, nl, fh, fl)
        dh, dl = float(k + 1), 0.0
        for bh, bl in zip(b_hi, b_lo):
            fh, fl = two_sum(bh, float(k))
            fh, fl = quick_two_sum(fh, fl + bl)
            dh, dl = dd_mul(dh, dl, fh, fl)
        rh, rl = dd_div(nh, nl, dh * np.ones_like(nh), dl * np.ones_like(nh))
        th_i, tl_i = dd_mul(th[idx], tl[idx], rh, rl)
        th_i = np.where(rh == 0.0, 0.0, th_i)
        tl_i = np.where(rh == 0.0, 0.0, tl_i)
        sh_i, sl_i = dd_add(sh[idx], sl[idx], th_i, tl_i)
        th[idx], tl[idx] = th_i, tl_i
        sh[idx], sl[idx] = sh_i, sl_i
        k += 1
        maxp[idx] = np.maximum(maxp[idx], np.abs(sh_i))
        est = _tail_estimate(th_i, rh)
        ok = est <= tol * np.abs(sh_i)
        sm = np.where(ok, small[idx] + 1, 0)
        small[idx] = sm
        with np.errstate(divide="ignore", invalid="ignore"):
            tail[idx] = np.where(sh_i != 0.0, est / np.abs(sh_i), np.where(est == 0.0, 0.0, np.inf))
        finished = sm >= SMALL_RUN
        nterms[idx[finished]] = k
        active[idx[finished]] = False
    nterms[active] = -k
    return sh + sl, tail, nterms, maxp


def horner_numpy(coeffs, u):
    return np.polyval(np.asarray(coeffs)[::-1], u)


# ---------------------------------------------------------------------------
# numba implementations

def _jit_family(funcs):
    # recompile each function against a namespace holding the jitted versions
    # of its siblings, so jitted code never sees a plain Python callee; the
    # rebuilt functions have no importable module, so they cannot be cached
    ns = {"_SPLITTER": _SPLITTER}
    for f in funcs:
        ns[f.__name__] = njit(types.FunctionType(f.__code__, ns, f.__name__), cache=False)
    return ns


def _build_numba_kernels():
    ns = _jit_family([two_sum, quick_two_sum, split, two_prod, dd_add, dd_mul, dd_div])
    j_two_sum = ns["two_sum"]
    j_quick_two_sum = ns["quick_two_sum"]
    j_dd_add = ns["dd_add"]
    j_dd_mul = ns["dd_mul"]
    j_dd_div = ns["dd_div"]

    @njit
    def tail_est(term, ratio):
        aterm = abs(term)
        if aterm == 0.0:
            return 0.0
        ar = abs(ratio)
        if ar < 1.0:
            return aterm * max(1.0, ar / (1.0 - ar))
        return np.inf

    @njit
    def pfq_series(a, b, z, tol, max_terms):
        n = z.shape[0]
        out = np.empty(n)
        tail = np.empty(n)
        nterms = np.empty(n, dtype=np.int64)
        maxp = np.empty(n)
        for i in range(n):
            zi = z[i]
            s = 1.0
            c = 0.0
            term = 1.0
            mp = 1.0
            small = 0
            k = 0
            rel = np.inf
            done = False
            while k < max_terms:
                num = zi
                for x in a:
                    num *= x + k
                den = k + 1.0
                for x in b:
                    den *= x + k
                ratio = num / den
                term *= ratio
                tot = s + term
                if abs(s) >= abs(term):
                    c += (s - tot) + term
                else:
                    c += (term - tot) + s
                s = tot
                k += 1
                total = s + c
                if abs(total) > mp:
                    mp = abs(total)
                est = tail_est(term, ratio)
                if total != 0.0:
                    rel = est / abs(total)
                else:
                    rel = 0.0 if est == 0.0 else np.inf
                if est <= tol * abs(total):
                    small += 1
                    if small >= 3:
                        done = True
                        break
                else:
                    small = 0
            out[i] = s + c
            tail[i] = rel
            nterms[i] = k if done else -k
            maxp[i] = mp
        return out, tail, nterms, maxp

    @njit
    def pfq_series_dd(a_hi, a_lo, b_hi, b_lo, z, tol, max_terms):
        n = z.shape[0]
        out = np.empty(n)
        tail = np.empty(n)
        nterms = np.empty(n, dtype=np.int64)
        maxp = np.empty(n)
        for i in range(n):
            sh, sl = 1.0, 0.0
            th, tl = 1.0, 0.0
            mp = 1.0
            small = 0
            k = 0
            rel = np.inf
            done = False
            while k < max_terms:
                nh, nl = z[i], 0.0
                for j in range(a_hi.shape[0]):
                    fh, fl = j_two_sum(a_hi[j], float(k))
                    fh, fl = j_quick_two_sum(fh, fl + a_lo[j])
                    nh, nl = j_dd_mul(nh, nl, fh, fl)
                dh, dl = k + 1.0, 0.0
                for j in range(b_hi.shape[0]):
                    fh, fl = j_two_sum(b_hi[j], float(k))
                    fh, fl = j_quick_two_sum(fh, fl + b_lo[j])
                    dh, dl = j_dd_mul(dh, dl, fh, fl)
                if nh == 0.0:
                    rh, rl = 0.0, 0.0
                    th, tl = 0.0, 0.0
                else:
                    rh, rl = j_dd_div(nh, nl, dh, dl)
                    th, tl = j_dd_mul(th, tl, rh, rl)
                sh, sl = j_dd_add(sh, sl, th, tl)
                k += 1
                if abs(sh) > mp:
                    mp = abs(sh)
                est = tail_est(th, rh)
                if sh != 0.0:
                    rel = est / abs(sh)
                else:
                    rel = 0.0 if est == 0.0 else np.inf
                if est <= tol * abs(sh):
                    small += 1
                    if small >= 3:
                        done = True
                        break
                else:
                    small = 0
            out[i] = sh + sl
            tail[i] = rel
            nterms[i] = k if done else -k
            maxp[i] = mp
        return out, tail, nterms, maxp

    @njit
    def horner(coeffs, u):
        out = np.empty(u.shape[0])
        m = coeffs.shape[0]
        for i in range(u.shape[0]):
            acc = 0.0
            for k in range(m - 1, -1, -1):
                acc = acc * u[i] + coeffs[k]
            out[i] = acc
        return out

    return pfq_series, pfq_series_dd, horner


if HAVE_NUMBA:
    pfq_series_numba, pfq_series_dd_numba, horner_numba = _build_numba_kernels()
else:  # pragma: no cover
    pfq_series_numba = pfq_series_dd_numba = horner_numba = None

if BACKEND == "numba":
    pfq_series = pfq_series_numba
    pfq_series_dd = pfq_series_dd_numba
    horner = horner_numba
else:
    pfq_series = pfq_series_numpy
    pfq_series_dd = pfq_series_dd_numpy
    horner = horner_numpy

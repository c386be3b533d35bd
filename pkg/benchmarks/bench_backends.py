"""Time the numba kernels against their numpy counterparts.

Both versions are imported directly from ``browntutte._kernels``, so this runs
in one process regardless of BROWNTUTTE_BACKEND.  Each kernel is called once
before timing to exclude JIT compilation, and results are checked to agree.

    python benchmarks/bench_backends.py [--repeat 5]
"""
import argparse
import time
from fractions import Fraction

import numpy as np

from browntutte import _kernels as K
from browntutte.meijer import weight_representation
from browntutte.special import _hi_lo


def best_of(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    # the hypergeometric series behind W_4 at 1000 points of (0, R/4)
    term = weight_representation(4).terms[0]
    a_hi, a_lo = _hi_lo(term.numerator_params)
    b_hi, b_lo = _hi_lo(term.denominator_params)
    y = np.linspace(1e-6, 0.25, 1000)
    yield "pfq_series", (K.pfq_series_numba, K.pfq_series_numpy), (a_hi, b_hi, y, 1e-16, 10**6)
    yield "pfq_series_dd", (K.pfq_series_dd_numba, K.pfq_series_dd_numpy), (a_hi, a_lo, b_hi, b_lo, y, 1e-16, 10**6)

    # slow algebraic convergence: a 4F3 at argument 0.999
    a = np.array([float(Fraction(k, 4)) for k in range(2, 6)])
    b = np.array([float(Fraction(k, 3)) for k in range(4, 7)])
    z = np.full(16, 0.999)
    yield "pfq_series z=0.999", (K.pfq_series_numba, K.pfq_series_numpy), (a, b, z, 1e-12, 10**6)

    coeffs = np.random.default_rng(0).standard_normal(128)
    u = np.linspace(0.0, 0.75, 100_000)
    yield "horner", (K.horner_numba, K.horner_numpy), (coeffs, u)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<22}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}{'max rel diff':>14}")
    for name, (fast, ref), fargs in cases():
        t_fast, out_fast = best_of(lambda: fast(*fargs), args.repeat)
        t_ref, out_ref = best_of(lambda: ref(*fargs), args.repeat)
        v_fast = out_fast[0] if isinstance(out_fast, tuple) else out_fast
        v_ref = out_ref[0] if isinstance(out_ref, tuple) else out_ref
        diff = float(np.max(np.abs(v_fast - v_ref) / np.maximum(np.abs(v_ref), 1e-300)))
        print(f"{name:<22}{1e3 * t_fast:>12.3f}{1e3 * t_ref:>12.3f}{t_ref / t_fast:>10.1f}{diff:>14.2e}")


if __name__ == "__main__":
    main()

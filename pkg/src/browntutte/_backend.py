"""Selects the numba or pure-numpy implementation of the hot kernels.

``BROWNTUTTE_BACKEND=numpy`` forces the vectorised numpy path; the default is
``numba`` when it imports, otherwise numpy.
"""
import os

_requested = os.environ.get("BROWNTUTTE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"BROWNTUTTE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"


def njit(func=None, *, cache=True):
    """``numba.njit(cache=cache)`` when numba is present, identity otherwise."""
    if func is None:
        return lambda f: njit(f, cache=cache)
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=cache)(func)

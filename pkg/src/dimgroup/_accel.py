"""Numba toggle.

Set ``DIMGROUP_NUMBA=0`` to run the kernels as plain Python over numpy arrays.
The flag is read once at import time.
"""
import os

_flag = os.environ.get("DIMGROUP_NUMBA", "1").strip().lower()
ENABLE_JIT = _flag not in ("0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    ENABLE_JIT = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise an identity decorator.

    Jitted functions keep the interpreted body on ``.py_func``; the fallback
    sets the same attribute so callers and benchmarks can treat both alike.
    """
    if ENABLE_JIT:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    def wrap(fn):
        fn.py_func = fn
        return fn

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return wrap(args[0])
    return wrap

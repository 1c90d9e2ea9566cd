"""Fixed-width integer kernels.

These are the only tight loops in the package that fit in machine words:
enumerating powers of t in ``Z[t]/(m, psi)`` for small m, and trial division
of a 63-bit odd integer.  Both compile with numba unless ``DIMGROUP_NUMBA=0``;
the interpreted bodies stay reachable as ``.py_func``.
"""
import numpy as np

from ._accel import ENABLE_JIT, njit

# Largest residue ring (m ** deg psi) the table-based kernel will allocate for.
TABLE_LIMIT = 1 << 24


@njit
def first_power_repeat(low, m, table_size):
    """First repeat among t^1, t^2, ... in ``Z[t]/(m, psi)``.

    ``low`` holds the non-leading coefficients of a monic psi reduced mod m
    (length = deg psi), and ``table_size`` is ``m ** deg psi``.  Returns
    ``(n1, n2)`` with ``n1 < n2`` the first pair where ``t^n1 == t^n2``.
    """
    d = low.shape[0]
    if d == 0:
        # Z[t]/(m, 1) is the zero ring
        return 1, 2
    seen = np.zeros(table_size, dtype=np.int64)
    state = np.zeros(d, dtype=np.int64)
    # t^1
    if d == 1:
        state[0] = (-low[0]) % m
    else:
        state[1] = 1
    k = 1
    while True:
        idx = 0
        for i in range(d - 1, -1, -1):
            idx = idx * m + state[i]
        if seen[idx] != 0:
            return seen[idx], k
        seen[idx] = k
        # multiply by t and reduce with t^d = -sum(low[i] t^i)
        top = state[d - 1]
        for i in range(d - 1, 0, -1):
            state[i] = (state[i - 1] - top * low[i]) % m
        state[0] = (-top * low[0]) % m
        k += 1


@njit
def smallest_odd_factor(n):
    """Smallest prime factor of an odd n >= 3 by trial division."""
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def power_repeat(psi_low, m: int) -> tuple[int, int]:
    """Dispatch :func:`first_power_repeat`, or a dict walk for large rings."""
    d = len(psi_low)
    size = m ** d
    if size <= TABLE_LIMIT and m < (1 << 31):
        low = np.array([c % m for c in psi_low], dtype=np.int64)
        n1, n2 = first_power_repeat(low, np.int64(m), np.int64(size))
        return int(n1), int(n2)
    return _power_repeat_dict(psi_low, m)


def _power_repeat_dict(psi_low, m: int) -> tuple[int, int]:
    d = len(psi_low)
    if d == 0:
        return 1, 2
    low = [c % m for c in psi_low]
    state = [0] * d
    if d == 1:
        state[0] = (-low[0]) % m
    else:
        state[1] = 1
    seen = {}
    k = 1
    while True:
        key = tuple(state)
        if key in seen:
            return seen[key], k
        seen[key] = k
        top = state[-1]
        state = [(-top * low[0]) % m] + [
            (state[i - 1] - top * low[i]) % m for i in range(1, d)
        ]
        k += 1


def trial_factor(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division (``|n| <= 2**63``)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor zero")
    if n > 1 << 63:
        raise ValueError("trial division is capped at 2**63")
    out: dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    while n > 1:
        if n < 1 << 62:
            p = int(smallest_odd_factor(np.int64(n))) if ENABLE_JIT else smallest_odd_factor(n)
        else:
            p = smallest_odd_factor.py_func(n)
        out[p] = out.get(p, 0) + 1
        n //= p
    return out

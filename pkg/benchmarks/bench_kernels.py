"""Compiled vs interpreted timings for the two integer kernels.

Run with ``python benchmarks/bench_kernels.py``.  The interpreted numbers come
from ``.py_func``, which is the same body the package runs under
``DIMGROUP_NUMBA=0``.
"""
import argparse
import time

import numpy as np

from dimgroup import kernels
from dimgroup._accel import ENABLE_JIT

# (psi low coefficients, m): rings of size m**deg
RING_CASES = [([1, 1], 97), ([1, -1, 0], 61), ([-2, 0, 1], 127), ([3, 0, -1, 1], 31)]
# odd semiprimes near the top of the int64 range
FACTOR_CASES = [1_000_003 * 999_983, 4_294_967_291 * 65_521, 2_147_483_647 * 131_071]


def best_of(fn, runs):
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_repeat(runs):
    rows = []
    for low, m in RING_CASES:
        arr = np.array([c % m for c in low], dtype=np.int64)
        size = m ** len(low)
        jit = best_of(lambda: kernels.first_power_repeat(arr, np.int64(m), np.int64(size)), runs)
        py = best_of(lambda: kernels.first_power_repeat.py_func(arr, m, size), max(1, runs // 5))
        walk = best_of(lambda: kernels._power_repeat_dict(low, m), max(1, runs // 5))
        rows.append((f"power repeat deg={len(low)} m={m}", jit, py, walk))
    return rows


def bench_factor(runs):
    rows = []
    for n in FACTOR_CASES:
        jit = best_of(lambda: kernels.smallest_odd_factor(np.int64(n)), runs)
        py = best_of(lambda: kernels.smallest_odd_factor.py_func(n), max(1, runs // 5))
        rows.append((f"odd factor n={n}", jit, py, float("nan")))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=5)
    args = ap.parse_args()
    if not ENABLE_JIT:
        print("numba disabled (DIMGROUP_NUMBA=0): both columns run interpreted")
    # compile outside the timed region
    kernels.first_power_repeat(np.zeros(1, dtype=np.int64), np.int64(2), np.int64(2))
    kernels.smallest_odd_factor(np.int64(9))
    print(f"{'case':44s} {'jit [s]':>10s} {'py_func [s]':>12s} {'dict walk [s]':>14s} {'speedup':>8s}")
    for name, jit, py, walk in bench_repeat(args.runs) + bench_factor(args.runs):
        print(f"{name:44s} {jit:10.5f} {py:12.5f} {walk:14.5f} {py / jit:8.1f}x")


if __name__ == "__main__":
    main()

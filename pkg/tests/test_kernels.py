import os
import subprocess
import sys

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dimgroup import kernels
from dimgroup._accel import ENABLE_JIT


def _low(psi_low, m):
    return np.array([c % m for c in psi_low], dtype=np.int64)


CASES = [([0], 2), ([-1], 2), ([1, 1], 3), ([-3, 0], 5), ([1, -1, 0], 4), ([-2, 0], 41), ([], 7)]


@pytest.mark.parametrize("psi_low,m", CASES)
def test_power_repeat_paths_agree(psi_low, m):
    size = m ** len(psi_low)
    compiled = kernels.first_power_repeat(_low(psi_low, m), np.int64(m), np.int64(size))
    interp = kernels.first_power_repeat.py_func(_low(psi_low, m), m, size)
    walk = kernels._power_repeat_dict(psi_low, m)
    assert tuple(map(int, compiled)) == tuple(map(int, interp)) == walk


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=3), st.integers(2, 12))
def test_power_repeat_random(psi_low, m):
    size = m ** len(psi_low)
    a = kernels.first_power_repeat(_low(psi_low, m), np.int64(m), np.int64(size))
    assert tuple(map(int, a)) == kernels._power_repeat_dict(psi_low, m)


def test_power_repeat_large_ring_uses_walk():
    # 101**4 exceeds the table limit
    assert kernels.power_repeat([1, 0, 0, 1], 101) == kernels._power_repeat_dict([1, 0, 0, 1], 101)


@given(st.integers(1, 10**12))
def test_trial_factor_matches_sympy(n):
    assert kernels.trial_factor(n) == sympy.factorint(n)


def test_trial_factor_edges():
    assert kernels.trial_factor(-12) == {2: 2, 3: 1}
    assert kernels.trial_factor(2**61 - 1) == {2**61 - 1: 1}
    with pytest.raises(ValueError):
        kernels.trial_factor(0)
    with pytest.raises(ValueError):
        kernels.trial_factor(2**64)


def test_smallest_odd_factor_paths_agree():
    for n in (3, 9, 91, 1_000_003 * 3, 999_983):
        assert int(kernels.smallest_odd_factor(np.int64(n))) == kernels.smallest_odd_factor.py_func(n)


def test_jit_flag_default():
    if os.environ.get("DIMGROUP_NUMBA", "1") != "0":
        assert ENABLE_JIT


def test_pure_fallback_subprocess():
    code = ("from dimgroup import kernels, _accel; from dimgroup.identities import monic_lemma;"
            "from dimgroup.poly import Poly;"
            "assert not _accel.ENABLE_JIT;"
            "assert kernels.first_power_repeat.py_func is kernels.first_power_repeat;"
            "r = monic_lemma(Poly([1, 1, 1]), 3); print(r.n, kernels.trial_factor(360))")
    env = dict(os.environ, DIMGROUP_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    from dimgroup.identities import monic_lemma
    from dimgroup.poly import Poly
    assert out.stdout.split()[0] == str(monic_lemma(Poly([1, 1, 1]), 3).n)
    assert "{2: 3, 3: 2, 5: 1}" in out.stdout

import random
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dimgroup.errors import InvalidInput, NotCoprime
from dimgroup.identities import bezout_integerized, monic_lemma
from dimgroup.laurent import LaurentPoly
from dimgroup.numtheory import multiplicative_order, q_adic_certificate, solve_unit_power
from dimgroup.poly import Poly


def expand_check(a, psi1, b, psi2, m):
    # independent re-expansion via sympy
    t = sympy.symbols("t")
    S = lambda p: sum(int(c) * t**i for i, c in enumerate(p.coeffs))
    return sympy.expand(S(a) * S(psi1) + S(b) * S(psi2) - m) == 0


def test_bezout_linear_pair():
    psi1, psi2 = Poly([-2, 1]), Poly([-3, 1])
    res = bezout_integerized(psi1, psi2)
    assert res.m == 1 and res.a_poly == Poly([1]) and res.b_poly == Poly([-1])
    assert expand_check(res.a_poly, psi1, res.b_poly, psi2, res.m)


def test_bezout_sqrt2_and_t():
    psi1, psi2 = Poly([-2, 0, 1]), Poly([0, 1])
    res = bezout_integerized(psi1, psi2)
    assert (res.a_poly, res.b_poly, res.m) == (Poly([-1]), Poly([0, 1]), 2)


def test_bezout_not_coprime():
    with pytest.raises(NotCoprime) as exc:
        bezout_integerized(Poly([-1, 1]), Poly([-1, 0, 1]))
    assert exc.value.common_factor == Poly([-1, 1])


int_polys = st.lists(st.integers(-9, 9), min_size=2, max_size=4).map(Poly).filter(lambda p: p.degree >= 1)


@given(int_polys, int_polys)
def test_bezout_random(psi1, psi2):
    try:
        res = bezout_integerized(psi1, psi2)
    except NotCoprime:
        t = sympy.symbols("t")
        S = lambda p: sum(int(c) * t**i for i, c in enumerate(p.coeffs))
        assert sympy.degree(sympy.gcd(S(psi1), S(psi2)), t) > 0
        return
    assert res.m > 0
    assert res.a_poly.is_integral() and res.b_poly.is_integral()
    assert expand_check(res.a_poly, psi1, res.b_poly, psi2, res.m)


def test_monic_lemma_psi_t():
    res = monic_lemma(Poly([0, 1]), 2)
    assert res.phi1.is_zero()
    assert res.phi2 == LaurentPoly.from_dict({-1: 1, -2: -1})
    assert res.n == -1


@pytest.mark.parametrize("psi,m", [(Poly([-1, 1]), 2), (Poly([1, 1, 1]), 3), (Poly([-3, 0, 1]), 5),
                                   (Poly([1, -1, 0, 1]), 4), (Poly([-2, 0, 1]), 41)])
def test_monic_lemma_identity_and_bound(psi, m):
    res = monic_lemma(psi, m)
    assert res.n != 0
    assert res.phi1.is_integral() and res.phi2.is_integral()
    lhs = res.phi1 * m + res.phi2 * LaurentPoly.from_poly(psi) + LaurentPoly.monomial(res.n)
    assert lhs == LaurentPoly.constant(1)
    # pigeonhole: at most m**deg + 1 powers before a repeat
    assert res.steps <= m ** psi.degree + 1


def test_monic_lemma_is_deterministic():
    assert monic_lemma(Poly([1, 1, 1]), 3) == monic_lemma(Poly([1, 1, 1]), 3)


def test_monic_lemma_rejects():
    with pytest.raises(InvalidInput):
        monic_lemma(Poly([1, 2]), 3)
    with pytest.raises(InvalidInput):
        monic_lemma(Poly([1, 1]), 1)


@pytest.mark.parametrize("m,q,expect", [(6, 4, (2, 3, 1)), (5, 2, (1, 5, 0)), (8, 2, (1, 1, 3))])
def test_q_adic_examples(m, q, expect):
    assert q_adic_certificate(m, q) == expect


def test_q_adic_random_pairs():
    rng = random.Random(20240611)
    for _ in range(500):
        m = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        q = rng.choice([-1, 1]) * rng.randint(2, 10**6)
        amp, r, N = q_adic_certificate(m, q)
        assert amp > 0 and amp * m == r * q**N and gcd(r, q) == 1


def test_q_adic_rejects():
    with pytest.raises(InvalidInput):
        q_adic_certificate(0, 3)
    with pytest.raises(InvalidInput):
        q_adic_certificate(3, 1)
    with pytest.raises(InvalidInput):
        q_adic_certificate(3, 2**64 + 1)


@pytest.mark.parametrize("r,q,mn,expect", [(3, 2, 1, (-1, 2)), (1, 5, 1, (-4, 1)), (7, 2, 4, (-9, 6))])
def test_unit_power_examples(r, q, mn, expect):
    assert solve_unit_power(r, q, mn) == expect


@given(st.integers(-500, 500).filter(lambda r: r != 0), st.integers(-60, 60), st.integers(0, 6))
def test_unit_power_random(r, q, mn):
    if gcd(r, q) != 1:
        with pytest.raises(NotCoprime):
            solve_unit_power(r, q, mn)
        return
    s, N = solve_unit_power(r, q, mn)
    assert s * r + q**N == 1 and N >= mn


@given(st.integers(2, 3000), st.integers(-100, 100))
def test_order_matches_sympy(n, q):
    if gcd(q, n) != 1:
        return
    assert multiplicative_order(q, n) == sympy.n_order(q % n, n)

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dimgroup.errors import DivisionByZero, TNotInvertible
from dimgroup.laurent import LaurentPoly, eval_mod
from dimgroup.poly import Poly, is_squarefree, poly_gcd, poly_xgcd

from strategies import laurents, polys, rationals

t = sympy.symbols("t")


def to_sym(p: Poly):
    return sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t**i
                for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def lp_sym(f: LaurentPoly):
    return sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t**e
                for e, c in f.terms()), sympy.Integer(0))


def test_poly_canonical_form():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero() and Poly().degree < 0
    assert Poly([Fraction(4, 2)]).coeffs == (2,)
    assert Poly([1, 2]) == Poly([Fraction(1), Fraction(2)])
    assert hash(Poly([1, 2])) == hash(Poly([Fraction(1), Fraction(2)]))


@given(polys(coeffs=rationals), polys(coeffs=rationals))
def test_poly_ring_ops_match_sympy(a, b):
    assert sympy.expand(to_sym(a + b) - (to_sym(a) + to_sym(b))) == 0
    assert sympy.expand(to_sym(a * b) - to_sym(a) * to_sym(b)) == 0
    assert sympy.expand(to_sym(a - b) - (to_sym(a) - to_sym(b))) == 0


@given(polys(max_deg=5, coeffs=rationals), polys(max_deg=3, coeffs=rationals, nonzero=True))
def test_divmod_matches_sympy(a, b):
    q, r = a.divmod(b)
    sq, sr = sympy.div(to_sym(a), to_sym(b), t)
    assert sympy.expand(to_sym(q) - sq) == 0
    assert sympy.expand(to_sym(r) - sr) == 0


def test_divide_by_zero():
    with pytest.raises(DivisionByZero):
        Poly([1, 1]).divmod(Poly())


@given(polys(max_deg=3, coeffs=rationals), polys(max_deg=3, coeffs=rationals),
       polys(max_deg=2, coeffs=rationals, nonzero=True))
def test_gcd_matches_sympy(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    expect = sympy.gcd(to_sym(a), to_sym(b))
    if expect != 0:
        expect = sympy.Poly(expect, t).monic().as_expr()
    assert sympy.expand(to_sym(g) - expect) == 0


@given(polys(max_deg=4, coeffs=rationals), polys(max_deg=4, coeffs=rationals))
def test_xgcd_identity(a, b):
    g, s, u = poly_xgcd(a, b)
    assert s * a + u * b == g
    assert g == poly_gcd(a, b)


def test_squarefree():
    assert is_squarefree(Poly([-2, 0, 1]))
    assert not is_squarefree(Poly([1, -2, 1]))


def test_laurent_canonical_form():
    f = LaurentPoly(-2, [0, 0, 3, 0])
    assert f.lowest == 0 and f.coeffs == (3,)
    z = LaurentPoly(5, [0])
    assert z.is_zero() and z.lowest == 0 and z.coeffs == ()
    assert LaurentPoly.monomial(-1) * LaurentPoly.monomial(1) == LaurentPoly.constant(1)


@given(laurents(), laurents())
def test_laurent_ops_match_sympy(f, g):
    assert sympy.expand(lp_sym(f * g) - lp_sym(f) * lp_sym(g)) == 0
    assert sympy.expand(lp_sym(f + g) - lp_sym(f) - lp_sym(g)) == 0
    assert sympy.expand(lp_sym(f.shift(3)) - lp_sym(f) * t**3) == 0


@given(laurents(), st.integers(0, 3))
def test_laurent_power(f, n):
    assert sympy.expand(lp_sym(f**n) - lp_sym(f) ** n) == 0


def test_laurent_evaluation():
    f = LaurentPoly.from_dict({-1: 1, 1: 1})
    assert f(Fraction(2)) == Fraction(5, 2)


def test_eval_mod_examples():
    psi = Poly([-2, 0, 1])
    assert eval_mod(LaurentPoly.monomial(2), psi) == Poly([2])
    assert eval_mod(LaurentPoly.monomial(-1), psi) == Poly([0, Fraction(1, 2)])
    with pytest.raises(TNotInvertible):
        eval_mod(LaurentPoly.monomial(-1), Poly([0, -1, 1]))


PSIS = [Poly([-2, 0, 1]), Poly([2, 3, 2]), Poly([-3, 1, 0, 1]), Poly([1, 1, 1])]


@given(laurents(), laurents(), st.sampled_from(PSIS))
def test_eval_mod_is_homomorphism(f, g, psi):
    lhs = eval_mod(f * g, psi)
    rhs = (eval_mod(f, psi) * eval_mod(g, psi)) % psi
    assert lhs == rhs
    assert eval_mod(f + g, psi) == eval_mod(f, psi) + eval_mod(g, psi)


@given(laurents(), st.sampled_from(PSIS))
def test_eval_mod_matches_sympy_rem(f, psi):
    lo = min(f.lowest, 0)
    # t^-k mod psi via sympy's inverse of t
    inv = sympy.invert(t, to_sym(psi), t)
    expr = sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                * (t**e if e >= 0 else inv ** (-e)) for e, c in f.terms()), sympy.Integer(0))
    expect = sympy.rem(sympy.expand(expr), to_sym(psi), t)
    assert sympy.expand(to_sym(eval_mod(f, psi)) - expect) == 0
    assert lo <= 0

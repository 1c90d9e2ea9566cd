from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from dimgroup.errors import DivisionByZero, HypothesisViolation, InvalidInput
from dimgroup.exactnum import (
    AlgebraicNumber,
    CubicExtElement,
    RatFunction,
    SymbolicReal,
    algnum_sign_refine,
    compare_rational,
    count_roots,
    cubic_invert,
    cubic_norm,
    irreducibility_screen,
    rational_arith,
    same_number,
)
from dimgroup.poly import Poly

from strategies import cubic_elements, polys, rationals

SQRT2 = AlgebraicNumber(Poly([-2, 0, 1]), 1, 2)


def test_rational_arith_examples():
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    assert Fraction(2, 4) == Fraction(1, 2) and Fraction(2, 4).denominator == 2
    with pytest.raises(DivisionByZero):
        rational_arith(Fraction(3, 5), Fraction(0, 1), "÷")


@given(rationals, rationals, rationals)
def test_rational_field_axioms(x, y, z):
    assert rational_arith(rational_arith(x, y, "+"), z, "+") == rational_arith(x, rational_arith(y, z, "+"), "+")
    assert rational_arith(x, rational_arith(y, z, "+"), "×") == x * y + x * z
    if x:
        assert rational_arith(x, x, "÷") == 1


@pytest.mark.parametrize("f, expected", [(Poly([-1, 1]), 1), (Poly([-2, 0, 1]), 0), (Poly([-2, 1]), -1)])
def test_sign_refine_examples(f, expected):
    assert algnum_sign_refine(SQRT2, f) == expected


@given(polys(4))
def test_sign_refine_agrees_with_float(f):
    val = float(sympy.Poly(list(reversed(f.coeffs)) or [0], sympy.Symbol("t")).eval(sympy.sqrt(2)).evalf(50))
    assume(abs(val) > 1e-6)
    assert algnum_sign_refine(SQRT2, f) == (1 if val > 0 else -1)


def test_algebraic_number_validation():
    with pytest.raises(InvalidInput):
        AlgebraicNumber(Poly([-2, 0, 1]), -2, 2)  # two roots
    with pytest.raises(InvalidInput):
        AlgebraicNumber(Poly([1, 0, 1]), -5, 5)  # none
    with pytest.raises(InvalidInput):
        AlgebraicNumber(Poly([1, -2, 1]), 0, 2)  # not squarefree
    with pytest.raises(HypothesisViolation):
        AlgebraicNumber(Poly([-2, -1, 1]), 1, 3)  # (t - 2)(t + 1)
    x = AlgebraicNumber(Poly([-4, 2]), 0, 5)
    assert x.minpoly == Poly([-2, 1]) and x.rational_value() == 2
    assert AlgebraicNumber(Poly([-2, 1]), 2, 5).hi == 2


def test_degree_five_needs_assertion():
    f = Poly([-2, 0, 0, 0, 0, 1])
    with pytest.raises(HypothesisViolation):
        AlgebraicNumber(f, 1, 2)
    assert AlgebraicNumber(f, 1, 2, asserted_minimal=True).degree == 5


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=5))
def test_irreducibility_screen_matches_sympy(cs):
    f = Poly(cs)
    assume(f.degree >= 2 and f[0] != 0)
    t = sympy.Symbol("t")
    irreducible = sympy.Poly(list(reversed(f.coeffs)), t).is_irreducible
    try:
        irreducibility_screen(f.primitive())
        passed = True
    except (HypothesisViolation, InvalidInput):
        passed = False
    assert passed == irreducible


@given(polys(4))
def test_count_roots_matches_sympy(f):
    assume(f.degree >= 1)
    t = sympy.Symbol("t")
    sp = sympy.Poly(list(reversed(f.coeffs)), t)
    expected = len(set(r for r in sympy.real_roots(sp) if -3 <= r <= 3))
    assert count_roots(f.primitive(), -3, 3) == expected or not sympy.Poly(sp).is_sqf


def test_same_number_and_compare():
    other = AlgebraicNumber(Poly([-2, 0, 1]), Fraction(7, 5), Fraction(3, 2))
    assert same_number(SQRT2, other)
    assert not same_number(SQRT2, AlgebraicNumber(Poly([-2, 0, 1]), -2, -1))
    assert compare_rational(SQRT2, Fraction(141, 100)) == 1
    assert compare_rational(SQRT2, Fraction(142, 100)) == -1
    assert abs(float(SQRT2) - 2 ** 0.5) < 1e-15


def test_symbolic_real():
    s = SymbolicReal("alpha", 2.5, 1e-9)
    lo, hi = s.enclosure()
    assert lo < Fraction(5, 2) < hi
    with pytest.raises(InvalidInput):
        SymbolicReal("neg", -1.0)
    with pytest.raises(InvalidInput):
        SymbolicReal("alpha").enclosure()


def _c(c0=0, c1=0, c2=0):
    return CubicExtElement.of(c0, c1, c2)


def test_cubic_norm_examples():
    assert cubic_norm(_c(1)) == 1
    assert cubic_norm(_c(0, 1)) == 2
    assert cubic_norm(_c(1, 1)) == 3
    # numeric cross-check of the conjugate product for 1 + cbrt2
    import cmath
    w, r = cmath.exp(2j * cmath.pi / 3), 2 ** (1 / 3)
    assert abs((1 + r) * (1 + w * r) * (1 + w * w * r) - 3) < 1e-12


def test_cubic_invert_examples():
    assert cubic_invert(_c(0, 1)) == _c(0, 0, Fraction(1, 2))
    assert cubic_invert(_c(1)) == _c(1)
    assert cubic_invert(_c(1, 1)) == _c(Fraction(1, 3), Fraction(-1, 3), Fraction(1, 3))
    with pytest.raises(DivisionByZero):
        cubic_invert(_c())


def test_cubic_norm_with_function_coefficients():
    t = RatFunction(Poly([0, 1]))
    x = CubicExtElement(t, RatFunction.const(1), RatFunction.const(0))
    assert cubic_norm(x) == RatFunction(Poly([2, 0, 0, 1]))
    assert x * cubic_invert(x) == _c(1)


@given(cubic_elements(), cubic_elements())
def test_norm_multiplicative(x, y):
    assert cubic_norm(x * y) == cubic_norm(x) * cubic_norm(y)


@given(cubic_elements(nonzero=True))
def test_inverse_and_nonzero_norm(x):
    assert not cubic_norm(x).is_zero()
    assert x * cubic_invert(x) == _c(1)


@given(cubic_elements(), cubic_elements(), cubic_elements())
def test_cubic_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def test_ratfunction_normal_form():
    f = RatFunction(Poly([-1, 0, 1]), Poly([-2, 2]))  # (t^2-1)/(2t-2)
    assert f.num == Poly([Fraction(1, 2), Fraction(1, 2)]) and f.den == Poly([1])
    with pytest.raises(DivisionByZero):
        RatFunction(Poly([1]), Poly())

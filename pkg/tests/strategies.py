"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from dimgroup.exactnum import CubicExtElement, RatFunction
from dimgroup.laurent import LaurentPoly
from dimgroup.poly import Poly

small_int = st.integers(-20, 20)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def polys(draw, max_deg=3, coeffs=small_int, nonzero=False):
    cs = draw(st.lists(coeffs, min_size=1, max_size=max_deg + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly([1])
    return p


@st.composite
def laurents(draw, span=3, coeffs=small_int):
    lo = draw(st.integers(-span, span))
    cs = draw(st.lists(coeffs, max_size=span + 1))
    return LaurentPoly(lo, cs)


@st.composite
def ratfunctions(draw, max_deg=2):
    num = draw(polys(max_deg, rationals))
    den = draw(polys(max_deg, rationals, nonzero=True))
    return RatFunction(num, den)


@st.composite
def cubic_elements(draw, nonzero=False):
    cs = [draw(ratfunctions()) for _ in range(3)]
    x = CubicExtElement(*cs)
    if nonzero and x.is_zero():
        x = CubicExtElement.of(RatFunction(Poly([Fraction(1)])))
    return x

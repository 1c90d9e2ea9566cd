"""Polynomial identity engines: integerised Bezout and the monic-Laurent lemma."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import InvalidInput, NotCoprime
from .kernels import power_repeat
from .laurent import LaurentPoly
from .poly import Poly, poly_xgcd

__all__ = ["BezoutResult", "MonicLemmaResult", "bezout_integerized", "monic_lemma"]


@dataclass(frozen=True)
class BezoutResult:
    """``a_poly*psi1 + b_poly*psi2 == m`` with integer polynomials and m > 0."""

    a_poly: Poly
    b_poly: Poly
    m: int

    def check(self, psi1: Poly, psi2: Poly) -> bool:
        return self.a_poly * psi1 + self.b_poly * psi2 == Poly([self.m])


@dataclass(frozen=True)
class MonicLemmaResult:
    """``m*phi1 + psi*phi2 + t**n == 1`` in Z[t, 1/t] with ``n != 0``.

    ``steps`` is how many powers of t were enumerated before the repeat.
    """

    phi1: LaurentPoly
    phi2: LaurentPoly
    n: int
    steps: int = 0

    def check(self, psi: Poly, m: int) -> bool:
        lhs = self.phi1 * m + self.phi2 * LaurentPoly.from_poly(psi) + LaurentPoly.monomial(self.n)
        return self.n != 0 and lhs == LaurentPoly.constant(1)


def bezout_integerized(psi1: Poly, psi2: Poly) -> BezoutResult:
    if psi1.is_zero() or psi2.is_zero():
        raise InvalidInput("Bezout inputs must be nonzero")
    g, s, u = poly_xgcd(psi1, psi2)
    if g.degree > 0:
        raise NotCoprime(f"common factor {g.primitive()}", common_factor=g.primitive())
    # s*psi1 + u*psi2 == 1 over Q; clear denominators
    coeffs = list(s.coeffs) + list(u.coeffs)
    m = reduce(lcm, (Fraction(c).denominator for c in coeffs), 1)
    a, b = s.scale(m), u.scale(m)
    content = reduce(gcd, [int(c) for c in a.coeffs + b.coeffs], m)
    if content > 1:
        a, b, m = a.scale(Fraction(1, content)), b.scale(Fraction(1, content)), m // content
    res = BezoutResult(a, b, m)
    assert res.check(psi1, psi2)
    return res


def monic_lemma(psi: Poly, m: int) -> MonicLemmaResult:
    """Find integer Laurent ``phi1, phi2`` and ``n != 0`` with
    ``m*phi1 + psi*phi2 + t**n == 1``.

    Powers ``t, t^2, ...`` are enumerated in the finite ring ``Z[t]/(m, psi)``
    until the first repeat ``t^n1 == t^n2`` (n1 < n2); then
    ``t^n2 - t^n1 == psi*Q + R`` with R divisible by m, and dividing through
    by ``t^n2`` gives the identity with ``n = n1 - n2``.
    """
    m = int(m)
    if not psi.is_integral() or not psi.is_monic():
        raise InvalidInput("psi must be a monic integer polynomial")
    if m <= 1:
        raise InvalidInput("m must exceed 1")
    d = psi.degree
    n1, n2 = power_repeat(list(psi.coeffs[:d]), m)
    diff = Poly.monomial(n2) - Poly.monomial(n1)
    quot, rem = diff.divmod(psi)
    if any(c % m for c in rem.coeffs):
        raise AssertionError("power enumeration produced a non-repeat")
    phi1 = LaurentPoly(-n2, [c // m for c in rem.coeffs])
    phi2 = LaurentPoly(-n2, quot.coeffs)
    res = MonicLemmaResult(phi1, phi2, n1 - n2, steps=n2)
    if not res.check(psi, m):
        raise AssertionError("monic lemma identity failed to re-expand")
    return res

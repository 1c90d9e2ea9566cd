"""Exact number tower.

Rationals are :class:`fractions.Fraction`.  On top of that this module has
real algebraic numbers (minimal polynomial plus isolating interval), formal
transcendental symbols, rational functions in one symbol, and the cubic
radical extension ``K(cbrt 2)`` over such rational functions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DivisionByZero, HypothesisViolation, InvalidInput
from .poly import Poly, is_squarefree, poly_gcd

__all__ = [
    "rational_arith",
    "AlgebraicNumber",
    "SymbolicReal",
    "RatFunction",
    "CubicExtElement",
    "algnum_sign_refine",
    "cubic_norm",
    "cubic_invert",
    "irreducibility_screen",
    "count_roots",
]


# ---------------------------------------------------------------------------
# rationals

def rational_arith(x, y, op: str) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    if op == "+":
        return x + y
    if op in ("-", "−"):
        return x - y
    if op in ("*", "×"):
        return x * y
    if op in ("/", "÷"):
        if y == 0:
            raise DivisionByZero(f"{x} / 0")
        return x / y
    raise InvalidInput(f"unknown operator {op!r}")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# real root counting by Descartes' rule on bisected intervals

def _descartes_bound(f: Poly, lo: Fraction, hi: Fraction) -> int:
    """Sign variations of ``(1+y)^n f((lo + hi*y)/(1+y))``.

    This bounds, with the right parity, the number of roots of f in the open
    interval (lo, hi).
    """
    n = f.degree
    num = Poly([lo, hi])
    den = Poly([1, 1])
    acc = Poly()
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        acc = acc + (num ** i) * (den ** (n - i)) * c
    signs = [_sign(c) for c in acc.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(f: Poly, lo, hi, max_depth: int = 400) -> int:
    """Exact number of distinct real roots of a squarefree f in ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        return 0
    if f.degree <= 0:
        return 0
    if lo == hi:
        return int(f(lo) == 0)
    total = int(f(lo) == 0) + int(f(hi) == 0)
    stack = [(lo, hi, 0)]
    while stack:
        a, b, depth = stack.pop()
        v = _descartes_bound(f, a, b)
        if v == 0:
            continue
        if v == 1:
            total += 1
            continue
        if depth > max_depth:
            raise InvalidInput("root counting did not converge; is the polynomial squarefree?")
        mid = (a + b) / 2
        if f(mid) == 0:
            total += 1
        stack.append((a, mid, depth + 1))
        stack.append((mid, b, depth + 1))
    return total


# ---------------------------------------------------------------------------
# irreducibility screen

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(f: Poly) -> list[Fraction]:
    f = f.primitive()
    if f.degree < 1:
        return []
    if f[0] == 0:
        return [Fraction(0)]
    roots = []
    for p in _divisors(f[0]):
        for q in _divisors(f.lc):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and f(cand) == 0:
                    roots.append(cand)
    return roots


def _has_quadratic_factor(f: Poly) -> bool:
    """Kronecker search for an integer quadratic factor of a root-free f."""
    points = (0, 1, -1)
    values = [f(x) for x in points]
    if any(v == 0 for v in values):
        return True
    choices = []
    for i, v in enumerate(values):
        ds = _divisors(v)
        # the overall sign of a factor is irrelevant, so fix it on one point
        choices.append(ds if i == 0 else ds + [-d for d in ds])
    for d0, d1, dm in itertools.product(*choices):
        # interpolate g with g(0)=d0, g(1)=d1, g(-1)=dm
        c0 = d0
        c2 = Fraction(d1 + dm - 2 * d0, 2)
        c1 = Fraction(d1 - dm, 2)
        if c2 == 0 or c1.denominator != 1 or c2.denominator != 1:
            continue
        g = Poly([c0, c1, c2])
        if (f % g).is_zero():
            return True
    return False


def irreducibility_screen(f: Poly) -> None:
    """Raise :class:`HypothesisViolation` if f is visibly reducible over Q.

    Checks squarefreeness, rational roots, and (degree 4) quadratic factors.
    Degrees of 5 or more are not screened here; callers must assert minimality.
    """
    if f.degree < 1:
        raise HypothesisViolation("a minimal polynomial must have positive degree")
    if not is_squarefree(f):
        raise HypothesisViolation(f"{f} is not squarefree")
    if f.degree == 1:
        return
    roots = _rational_roots(f)
    if roots:
        raise HypothesisViolation(f"{f} has the rational root {roots[0]}")
    if f.degree >= 5:
        raise HypothesisViolation(
            f"cannot screen degree {f.degree} for irreducibility; assert minimality explicitly"
        )
    if f.degree == 4 and _has_quadratic_factor(f):
        raise HypothesisViolation(f"{f} has a quadratic factor over Z")


# ---------------------------------------------------------------------------
# algebraic numbers

@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number: primitive integer minimal polynomial plus an
    isolating interval ``[lo, hi]`` holding exactly one of its roots."""

    minpoly: Poly
    lo: Fraction
    hi: Fraction
    asserted_minimal: bool = False

    def __post_init__(self):
        f = self.minpoly if isinstance(self.minpoly, Poly) else Poly(self.minpoly)
        if f.degree < 1:
            raise InvalidInput("minimal polynomial must have positive degree")
        f = f.primitive()
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise InvalidInput("isolating interval has lo > hi")
        if not is_squarefree(f):
            raise InvalidInput(f"minimal polynomial {f} is not squarefree")
        if count_roots(f, lo, hi) != 1:
            raise InvalidInput(f"[{lo}, {hi}] does not isolate exactly one root of {f}")
        if f(lo) == 0:
            hi = lo
        elif f(hi) == 0:
            lo = hi
        object.__setattr__(self, "minpoly", f)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not self.asserted_minimal:
            irreducibility_screen(f)

    @classmethod
    def from_rational(cls, x) -> "AlgebraicNumber":
        x = Fraction(x)
        return cls(Poly([-x.numerator, x.denominator]), x, x, asserted_minimal=True)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput("not a rational number")
        return Fraction(-self.minpoly[0], self.minpoly[1])

    def bisect(self) -> "AlgebraicNumber":
        """Halve the isolating interval."""
        if self.lo == self.hi:
            return self
        f = self.minpoly
        mid = (self.lo + self.hi) / 2
        fm = f(mid)
        if fm == 0:
            lo = hi = mid
        elif _sign(f(self.lo)) * _sign(fm) < 0:
            lo, hi = self.lo, mid
        else:
            lo, hi = mid, self.hi
        new = object.__new__(AlgebraicNumber)
        object.__setattr__(new, "minpoly", f)
        object.__setattr__(new, "lo", lo)
        object.__setattr__(new, "hi", hi)
        object.__setattr__(new, "asserted_minimal", self.asserted_minimal)
        return new

    def refine(self, width) -> "AlgebraicNumber":
        x = self
        width = Fraction(width)
        while x.hi - x.lo > width:
            x = x.bisect()
        return x

    def __float__(self):
        x = self.refine(Fraction(1, 2 ** 60) * max(1, abs(self.hi)))
        return float((x.lo + x.hi) / 2)

    def sign(self) -> int:
        return algnum_sign_refine(self, Poly.t())

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        return f"root of {self.minpoly} in [{self.lo}, {self.hi}]"


def algnum_sign_refine(x: AlgebraicNumber, f: Poly) -> int:
    """Sign of ``f(x)``, decided exactly."""
    f = Poly(f.coeffs)
    if f.is_zero():
        return 0
    if x.lo == x.hi:
        return _sign(f(x.lo))
    g = poly_gcd(x.minpoly, f)
    if g.degree >= 1:
        # g divides the squarefree minpoly, so it has at most one root in the
        # isolating interval and that root is x exactly when g changes sign
        if _sign(g(x.lo)) * _sign(g(x.hi)) <= 0:
            return 0
    while True:
        if f(x.lo) != 0 and f(x.hi) != 0 and _descartes_bound(f, x.lo, x.hi) == 0:
            return _sign(f(x.lo))
        x = x.bisect()


def same_number(x: AlgebraicNumber, y: AlgebraicNumber) -> bool:
    if x.minpoly != y.minpoly:
        return False
    while True:
        if x.hi < y.lo or y.hi < x.lo:
            return False
        lo, hi = min(x.lo, y.lo), max(x.hi, y.hi)
        if count_roots(x.minpoly, lo, hi) == 1:
            return True
        x, y = x.bisect(), y.bisect()


def compare_rational(x: AlgebraicNumber, c) -> int:
    """Sign of ``x - c`` for a rational c."""
    c = Fraction(c)
    return algnum_sign_refine(x, Poly([-c, 1]))


# ---------------------------------------------------------------------------
# transcendental symbols

@dataclass(frozen=True)
class SymbolicReal:
    """A formal positive real; distinct names are algebraically independent.

    ``approx`` and ``radius`` describe an enclosure used only for numeric
    bounds, never for exact decisions.
    """

    name: str
    approx: Optional[float] = None
    radius: float = 0.0

    def __post_init__(self):
        if not self.name or not self.name.replace("_", "a").isalnum():
            raise InvalidInput(f"bad symbol name {self.name!r}")
        if self.approx is not None:
            if not (math.isfinite(self.approx) and math.isfinite(self.radius)) or self.radius < 0:
                raise InvalidInput(f"bad enclosure for {self.name}")
            if self.approx - self.radius <= 0:
                raise InvalidInput(f"symbol {self.name} must be positive")

    def enclosure(self) -> tuple[Fraction, Fraction]:
        if self.approx is None:
            raise InvalidInput(f"symbol {self.name} carries no numeric approximation")
        # Fraction(float) is exact, so these bounds add no rounding of their own
        a, r = Fraction(self.approx), Fraction(self.radius)
        return a - r, a + r


# ---------------------------------------------------------------------------
# rational functions over Q in one symbol

@dataclass(frozen=True)
class RatFunction:
    num: Poly
    den: Poly = field(default_factory=lambda: Poly([1]))

    def __post_init__(self):
        num, den = Poly(self.num.coeffs), Poly(self.den.coeffs)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = Fraction(den.lc)
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c) -> "RatFunction":
        return cls(Poly([c]))

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunction):
            return x
        if isinstance(x, Poly):
            return RatFunction(x)
        if isinstance(x, (int, Fraction)):
            return RatFunction(Poly([x]))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunction(self.num + other.num, self.den)
        return RatFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunction(self.num ** n, self.den ** n)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise DivisionByZero("pole")
        return self.num(x) / d

    def __repr__(self):
        return f"RatFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# the cubic radical extension K(cbrt 2), K = Q(t)

@dataclass(frozen=True)
class CubicExtElement:
    """``c0 + c1*cbrt(2) + c2*cbrt(4)`` with rational-function coefficients."""

    c0: RatFunction = field(default_factory=lambda: RatFunction.const(0))
    c1: RatFunction = field(default_factory=lambda: RatFunction.const(0))
    c2: RatFunction = field(default_factory=lambda: RatFunction.const(0))

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            v = RatFunction._coerce(getattr(self, name))
            if v is NotImplemented:
                raise InvalidInput(f"bad coefficient for {name}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, c0=0, c1=0, c2=0) -> "CubicExtElement":
        return cls(c0, c1, c2)

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero() and self.c2.is_zero()

    def __add__(self, other):
        return CubicExtElement(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return CubicExtElement(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self):
        return CubicExtElement(-self.c0, -self.c1, -self.c2)

    def __mul__(self, other):
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = other.c0, other.c1, other.c2
        # cbrt(2)^3 = 2
        return CubicExtElement(
            a0 * b0 + (a1 * b2 + a2 * b1) * 2,
            a0 * b1 + a1 * b0 + a2 * b2 * 2,
            a0 * b2 + a1 * b1 + a2 * b0,
        )

    def __eq__(self, other):
        if not isinstance(other, CubicExtElement):
            return NotImplemented
        return (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2)

    def __hash__(self):
        return hash((self.c0, self.c1, self.c2))

    def __str__(self):
        return f"({self.c0}) + ({self.c1})*cbrt2 + ({self.c2})*cbrt4"


def cubic_norm(x: CubicExtElement) -> RatFunction:
    """Field norm ``4 c2^3 + 2 c1^3 + c0^3 - 6 c0 c1 c2``."""
    p, q, r = x.c2, x.c1, x.c0
    return p * p * p * 4 + q * q * q * 2 + r * r * r - p * q * r * 6


def cubic_invert(x: CubicExtElement) -> CubicExtElement:
    """Inverse via the conjugate cofactor; the cofactor times x is the norm."""
    if x.is_zero():
        raise DivisionByZero("inversion of zero in K(cbrt 2)")
    p, q, r = x.c2, x.c1, x.c0
    cof = CubicExtElement(r * r - p * q * 2, p * p * 2 - q * r, q * q - p * r)
    inv_norm = cubic_norm(x).inverse()
    return CubicExtElement(cof.c0 * inv_norm, cof.c1 * inv_norm, cof.c2 * inv_norm)

"""Monomials in cbrt(2) and named positive symbols, sparse expressions over
them, monomial scalars, and exact rational interval enclosures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import InvalidInput, NeedsRefinement

CBRT2_NAME = "cbrt2"


def _icbrt(n: int) -> int:
    """Floor of the real cube root of a nonnegative integer."""
    if n < 0:
        raise ValueError("negative")
    lo, hi = 0, 1
    while hi ** 3 <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** 3 <= n:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True, order=True)
class Mono:
    """``cbrt(2)**radical * prod(sym**e)`` with ``radical`` in {0, 1, 2}.

    ``exps`` is a sorted tuple of ``(name, exponent)`` pairs, zeros dropped.
    """

    radical: int = 0
    exps: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def make(cls, radical: int = 0, exps: Optional[Mapping[str, int]] = None) -> tuple[Fraction, "Mono"]:
        """Normalise an arbitrary radical power; returns ``(rational factor, mono)``."""
        q, r = divmod(int(radical), 3)
        factor = Fraction(2) ** q
        items = tuple(sorted((k, int(v)) for k, v in (exps or {}).items() if v != 0))
        return factor, cls(r, items)

    @classmethod
    def one(cls) -> "Mono":
        return cls(0, ())

    def is_one(self) -> bool:
        return self.radical == 0 and not self.exps

    def exp_dict(self) -> Dict[str, int]:
        return dict(self.exps)

    def symbols(self) -> set:
        return {k for k, _ in self.exps}

    def mul(self, other: "Mono") -> tuple[Fraction, "Mono"]:
        e = self.exp_dict()
        for k, v in other.exps:
            e[k] = e.get(k, 0) + v
        return Mono.make(self.radical + other.radical, e)

    def pow(self, n: int) -> tuple[Fraction, "Mono"]:
        return Mono.make(self.radical * n, {k: v * n for k, v in self.exps})

    def inverse(self) -> tuple[Fraction, "Mono"]:
        return self.pow(-1)

    def __str__(self):
        parts = []
        if self.radical == 1:
            parts.append("cbrt2")
        elif self.radical == 2:
            parts.append("cbrt4")
        for k, v in self.exps:
            parts.append(k if v == 1 else f"{k}^{v}")
        return "*".join(parts) if parts else "1"


# A coordinate value: finite sum of rational multiples of monomials.
SymExpr = Dict[Mono, Fraction]


def expr_const(c) -> SymExpr:
    c = Fraction(c)
    return {Mono.one(): c} if c else {}


def expr_add(a: SymExpr, b: SymExpr, scale=1) -> SymExpr:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c * scale
        if v:
            out[m] = Fraction(v)
        else:
            out.pop(m, None)
    return out


def expr_scale(a: SymExpr, c) -> SymExpr:
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def expr_mul_mono(a: SymExpr, coeff, mono: Mono) -> SymExpr:
    out: SymExpr = {}
    for m, v in a.items():
        f, mm = m.mul(mono)
        val = out.get(mm, 0) + v * f * coeff
        if val:
            out[mm] = Fraction(val)
        else:
            out.pop(mm, None)
    return out


def expr_mul(a: SymExpr, b: SymExpr) -> SymExpr:
    out: SymExpr = {}
    for m, v in b.items():
        out = expr_add(out, expr_mul_mono(a, v, m))
    return out


def expr_is_rational(a: SymExpr) -> bool:
    return all(m.is_one() for m in a)


def expr_str(a: SymExpr) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a):
        c = a[m]
        if m.is_one():
            parts.append(str(c))
        elif c == 1:
            parts.append(str(m))
        else:
            parts.append(f"{c}*{m}")
    return " + ".join(parts)


@dataclass(frozen=True)
class Scalar:
    """A positive-or-signed rational times a monomial, e.g. ``2/3 * alpha^2``."""

    coeff: Fraction
    mono: Mono = Mono()

    @classmethod
    def of(cls, coeff=1, radical: int = 0, **exps) -> "Scalar":
        f, m = Mono.make(radical, exps)
        return cls(Fraction(coeff) * f, m)

    def __mul__(self, other: "Scalar") -> "Scalar":
        f, m = self.mono.mul(other.mono)
        return Scalar(self.coeff * other.coeff * f, m)

    def inverse(self) -> "Scalar":
        if self.coeff == 0:
            raise InvalidInput("zero scalar has no inverse")
        f, m = self.mono.inverse()
        return Scalar(f / self.coeff, m)

    def pow(self, n: int) -> "Scalar":
        f, m = self.mono.pow(n)
        return Scalar(self.coeff ** n * f, m)

    def is_one(self) -> bool:
        return self.coeff == 1 and self.mono.is_one()

    def symbols(self) -> set:
        return self.mono.symbols()

    def __str__(self):
        if self.mono.is_one():
            return str(self.coeff)
        if self.coeff == 1:
            return str(self.mono)
        return f"{self.coeff}*{self.mono}"


# ---------------------------------------------------------------------------
# exact rational intervals with outward dyadic rounding

PREC = 96
_SCALE = 1 << PREC


def _down(x: Fraction) -> Fraction:
    return Fraction((x.numerator * _SCALE) // x.denominator, _SCALE)


def _up(x: Fraction) -> Fraction:
    return Fraction(-((-x.numerator * _SCALE) // x.denominator), _SCALE)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Interval(_down(min(ps)), _up(max(ps)))

    def scale(self, c) -> "Interval":
        c = Fraction(c)
        a, b = self.lo * c, self.hi * c
        return Interval(_down(min(a, b)), _up(max(a, b)))

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise NeedsRefinement("reciprocal of an interval containing zero")
        return Interval(_down(1 / self.hi), _up(1 / self.lo))

    def pow(self, n: int) -> "Interval":
        if n < 0:
            return self.reciprocal().pow(-n)
        out = Interval.point(1)
        for _ in range(n):
            out = out * self
        return out

    def square(self) -> "Interval":
        if self.lo >= 0:
            return Interval(_down(self.lo * self.lo), _up(self.hi * self.hi))
        if self.hi <= 0:
            return Interval(_down(self.hi * self.hi), _up(self.lo * self.lo))
        return Interval(Fraction(0), _up(max(self.lo * self.lo, self.hi * self.hi)))

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise NeedsRefinement(f"enclosure [{float(self.lo)}, {float(self.hi)}] straddles zero")

    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def width(self) -> Fraction:
        return self.hi - self.lo


def cbrt2_interval(bits: int = PREC) -> Interval:
    k = 1 << bits
    lo = _icbrt(2 * k ** 3)
    return Interval(Fraction(lo, k), Fraction(lo + 1, k))


_CBRT = {}


def radical_interval(r: int) -> Interval:
    if r not in _CBRT:
        c = cbrt2_interval()
        _CBRT[r] = c.pow(r)
    return _CBRT[r]


def mono_interval(m: Mono, enclosures: Mapping[str, Interval]) -> Interval:
    out = radical_interval(m.radical)
    for name, e in m.exps:
        if name not in enclosures:
            raise InvalidInput(f"no numeric enclosure for symbol {name}")
        out = out * enclosures[name].pow(e)
    return out


def expr_interval(a: SymExpr, enclosures: Mapping[str, Interval]) -> Interval:
    acc = Interval.point(0)
    for m, c in a.items():
        acc = acc + mono_interval(m, enclosures).scale(c)
    return acc


def expr_sign(a: SymExpr, enclosures: Mapping[str, Interval]) -> int:
    """Sign of an expression: exact for rationals, by enclosure otherwise."""
    if not a:
        return 0
    if expr_is_rational(a):
        c = a[Mono.one()]
        return (c > 0) - (c < 0)
    return expr_interval(a, enclosures).sign()


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound on the square root of a nonnegative rational."""
    if x <= 0:
        return Fraction(0)
    num = x.numerator * _SCALE * _SCALE
    r = isqrt(num // x.denominator) + 1
    return Fraction(r, _SCALE)

"""Dense univariate polynomials with exact coefficients.

A :class:`Poly` stores its coefficients low-degree first, so ``coeffs[i]`` is
the coefficient of ``t**i``.  Coefficients are Python ints or
:class:`fractions.Fraction`; an all-integer polynomial is what the rest of the
package calls an IntPoly, anything else a RatPoly.  The zero polynomial has an
empty coefficient tuple.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, InvalidInput

Number = Union[int, Fraction]


def _norm(c):
    # Fractions with denominator 1 collapse to int so equality and hashing
    # do not depend on how a coefficient was produced.
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _trim(coeffs: Sequence) -> tuple:
    cs = [_norm(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _cleared(coeffs: Sequence) -> tuple[list, int]:
    """Integer list and common denominator d with ``coeffs == ints / d``."""
    d = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            d = lcm(d, c.denominator)
    if d == 1:
        return list(coeffs), 1
    return [int(c * d) for c in coeffs], d


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- construction -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Poly":
        if degree < 0:
            raise InvalidInput("negative degree in an ordinary polynomial")
        return cls([0] * degree + [c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> Number:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self.coeffs, 0)

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # clear denominators so the inner loop runs on ints
        (a, da), (b, db) = _cleared(a), _cleared(b)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        d = da * db
        return Poly(out if d == 1 else [Fraction(c, d) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative power of an ordinary polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Number) -> "Poly":
        return Poly([x * c for x in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over Q.

        When the divisor is monic and both inputs are integral the quotient and
        remainder stay integral.
        """
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.lc
        monic = lead == 1
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            q = c if monic else Fraction(c) / lead
            quot[k] = q
            for j in range(db + 1):
                rem[k + j] -= q * bc[j]
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    # -- evaluation and calculus -------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed_poly(self) -> "Poly":
        return Poly(list(reversed(self.coeffs)))

    # -- content -------------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` primitive and integral."""
        if not self.coeffs:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.coeffs]
        dens = [Fraction(c).denominator for c in self.coeffs]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def primitive(self) -> "Poly":
        """Primitive integer polynomial with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return Poly([Fraction(x) / c for x in self.coeffs])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = Fraction(self.lc)
        return Poly([Fraction(c) / lead for c in self.coeffs])


_GCD_PRIME = (1 << 61) - 1


def _mod_degree(a: list, b: list, p: int) -> int:
    """Degree of gcd(a, b) over Z/p, for integer lists low-first."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            c = a[-1] * inv % p
            off = len(a) - 1 - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - c * b[i]) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer lists (low-first), made primitive."""
    lb, db = b[-1], len(b) - 1
    a = list(a)
    while len(a) - 1 >= db:
        c = a[-1]
        a = [x * lb for x in a]
        off = len(a) - 1 - db
        for i in range(db + 1):
            a[off + i] -= c * b[i]
        while a and a[-1] == 0:
            a.pop()
    if a:
        g = reduce(gcd, a)
        if a[-1] < 0:
            g = -g
        a = [x // g for x in a]
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    if not a or not b:
        return (a or b).monic()
    A = [int(c) for c in a.primitive().coeffs]
    B = [int(c) for c in b.primitive().coeffs]
    if len(A) < len(B):
        A, B = B, A
    # a gcd of degree 0 mod p (p not dividing a leading coefficient) is 1 over Q
    if A[-1] % _GCD_PRIME and _mod_degree(A, B, _GCD_PRIME) == 0:
        return Poly([1])
    while B:
        A, B = B, _int_prem(A, B)
    return Poly(A).monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` and g the monic gcd over Q."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    u0, u1 = Poly(), Poly([1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if not r0:
        return r0, s0, u0
    inv = 1 / Fraction(r0.lc)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def is_squarefree(f: Poly) -> bool:
    if f.degree <= 0:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def format_poly(coeffs: Sequence, lowest: int, var: str = "t") -> str:
    """Human-readable rendering, highest degree first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        e = i + lowest
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out

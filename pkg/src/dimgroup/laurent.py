"""Laurent polynomials in one variable with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DivisionByZero, InvalidInput, TNotInvertible
from .poly import Number, Poly, _norm, format_poly, poly_xgcd


class LaurentPoly:
    """``sum(coeffs[i] * t**(lowest + i))``.

    Stored trimmed on both ends; the zero polynomial is ``lowest=0, coeffs=()``.
    Integer coefficients stay Python ints, so membership in Z[t, 1/t] is just
    :meth:`is_integral`.
    """

    __slots__ = ("lowest", "coeffs")

    def __init__(self, lowest: int = 0, coeffs: Iterable[Number] = ()):
        cs = [_norm(c) for c in coeffs]
        lo = int(lowest)
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        cs = cs[start:end]
        if not cs:
            lo = 0
        else:
            lo += start
        object.__setattr__(self, "lowest", lo)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_poly(cls, p: Poly, shift: int = 0) -> "LaurentPoly":
        return cls(shift, p.coeffs)

    @classmethod
    def from_dict(cls, terms: Mapping[int, Number]) -> "LaurentPoly":
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "LaurentPoly":
        return cls(e, [c])

    @classmethod
    def constant(cls, c: Number) -> "LaurentPoly":
        return cls(0, [c])

    # -- queries -------------------------------------------------------------
    @property
    def highest(self) -> int:
        return self.lowest + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def terms(self):
        """Yield ``(exponent, coefficient)`` for the nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.lowest + i, c

    def coeff(self, e: int) -> Number:
        i = e - self.lowest
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.lowest == other.lowest and self.coeffs == other.coeffs
        if isinstance(other, Poly):
            return self == LaurentPoly.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(("LaurentPoly", self.lowest, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"LaurentPoly({self.lowest}, {list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self.coeffs, self.lowest)

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Poly):
            return LaurentPoly.from_poly(x)
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lowest, other.lowest)
        hi = max(self.highest, other.highest)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lowest - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.lowest - lo + i] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.lowest, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.lowest, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        prod = Poly(self.coeffs) * Poly(other.coeffs)
        return LaurentPoly(self.lowest + other.lowest, prod.coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1:
                raise InvalidInput("only monomials have Laurent inverses")
            c = self.coeffs[0]
            return LaurentPoly(self.lowest * n, [Fraction(1) / Fraction(c) ** (-n)])
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.lowest + k, self.coeffs)

    def __call__(self, x):
        """Evaluate at a nonzero exact number (or anything supporting ``**``)."""
        if self.lowest < 0 and x == 0:
            raise DivisionByZero("negative powers evaluated at zero")
        acc = Poly(self.coeffs)(x)
        if self.lowest >= 0:
            return acc * x ** self.lowest
        inv = Fraction(1) / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x
        return acc * inv ** (-self.lowest)

    def split(self) -> tuple[int, Poly]:
        """Return ``(k, p)`` with ``self == t**k * p`` and p an ordinary polynomial."""
        return self.lowest, Poly(self.coeffs)


def eval_mod(f: LaurentPoly, psi: Poly) -> Poly:
    """Canonical representative of ``f`` in ``Q[t]/(psi)``.

    Negative powers of t use the inverse of t modulo psi, which exists only
    when ``psi(0) != 0``.
    """
    if psi.degree < 0:
        raise InvalidInput("reduction modulo the zero polynomial")
    if isinstance(f, Poly):
        f = LaurentPoly.from_poly(f)
    if f.is_zero():
        return Poly()
    k, p = f.split()
    if k >= 0:
        return p.shift(k) % psi
    if psi.degree == 0:
        return Poly()
    if psi[0] == 0:
        raise TNotInvertible("t is not invertible modulo a polynomial with psi(0) = 0")
    g, s, _ = poly_xgcd(Poly.t(), psi)
    # s*t + u*psi = 1, so s is t^-1 modulo psi
    inv_t = s % psi
    acc = p % psi
    base = inv_t
    n = -k
    while n:
        if n & 1:
            acc = (acc * base) % psi
        n >>= 1
        if n:
            base = (base * base) % psi
    return acc

"""Certificates that ``diag(1, w)`` lies in the invariance group of every
A-invariant subgroup, for ``A = diag(a, b)`` with a, b algebraic.

A certificate is a one-variable identity ``P(t)`` in ``Z[t, 1/t]`` with
``P(a) = 1`` and ``P(b) = w``.  Since G is A-invariant, ``P(A)`` maps G into
G, so certificates for ``w`` and ``1/w`` together show ``diag(1, w) G = G``.

Rational and Laurent regimes share one shape: ``P = amp * X * V + 1`` where
``V(a) = 0`` and ``amp * V(b) = r * w**e`` with r prime to w.  With
``s*r + w**N = 1`` the polynomial X only has to hit ``c * w**-K`` at b, which
a Bezout pair on coprime powers provides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Union

from .errors import HypothesisViolation, InvalidInput, NotCoprime, WitnessMismatch
from .exactnum import AlgebraicNumber, compare_rational
from .groups import MonomialMatrix
from .identities import bezout_integerized, monic_lemma
from .laurent import LaurentPoly, eval_mod
from .numtheory import q_adic_certificate, solve_unit_power
from .poly import Poly
from .symbolic import Scalar

REGIMES = ("rational_b", "laurent_unit", "monic_b", "trivial")
Number = Union[Fraction, AlgebraicNumber]


@dataclass(frozen=True, eq=False)
class Certificate:
    regime: str
    a: AlgebraicNumber
    b: Number
    target: MonomialMatrix
    identity: LaurentPoly
    constants: Dict[str, object] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        return (self.regime, _desc(self.a), _desc(self.b), self.target, self.identity, self.constants) == (
            other.regime, _desc(other.a), _desc(other.b), other.target, other.identity, other.constants)

    def second_entry(self) -> Scalar:
        return self.target.entries[1]


def _desc(x):
    if isinstance(x, AlgebraicNumber):
        return ("alg", x.minpoly, x.lo, x.hi)
    return ("rat", Fraction(x))


def _xy(p: int, w: int, K: int, c: int) -> tuple[int, int]:
    """Integers x, y with ``x*p**K + y*w**K == c`` (p, w coprime, K >= 1)."""
    a, b = p ** K, w ** K
    # extended Euclid on integers
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == 1
    return old_s * c, old_t * c


def _build_x(phi: LaurentPoly, p: int, w: int, K: int, c: int):
    """X in Z[t, 1/t] with ``X(b) == c * w**-K`` given ``phi(b) == p/w``."""
    if K <= 0:
        return LaurentPoly.constant(c * w ** (-K)), 0, 0
    x, y = _xy(p, w, K, c)
    return phi ** K * x + y, x, y


def _positive_rational(b) -> Fraction:
    b = Fraction(b)
    if b <= 0:
        raise HypothesisViolation("b must be positive")
    if b == 1:
        raise HypothesisViolation("b must differ from 1")
    return b


def _check_a(a: AlgebraicNumber):
    if a.sign() <= 0:
        raise HypothesisViolation("a must be positive")
    if a.is_rational() and a.rational_value() == 1:
        raise HypothesisViolation("a must differ from 1")


def _unit_pipeline(regime, a, b, V: Poly, amp_base: int, w: int, p: int, phi: LaurentPoly, extra: dict):
    """Shared tail: q-adic split of ``amp_base``, unit power, Bezout on powers."""
    amp, r, e = q_adic_certificate(amp_base, w)
    # amp * V(b) == r * w**e_shift where e_shift accounts for any scaling of V(b)
    e_shift = e - extra.pop("_denominator_exp", 0)
    s, N = solve_unit_power(r, w, max(1, -e_shift + 1))
    Vl = LaurentPoly.from_poly(V)
    out = []
    for sign, K, c in ((-1, N + e_shift, s), (1, e_shift, -s)):
        # sign -1: target w**-N; sign +1: target w**N
        X, x, y = _build_x(phi, p, w, K, c)
        P = X * Vl * amp + 1
        target = MonomialMatrix.diag(1, Fraction(w) ** (sign * N))
        consts = dict(extra)
        consts.update(amp=amp, r=r, e=e_shift, s=s, N=N, K=K, x=x, y=y)
        out.append(Certificate(regime, a, b, target, P, consts))
    return out[0], out[1]


def certify_rational_b(a: AlgebraicNumber, b) -> tuple[Certificate, Certificate]:
    """Certificates for ``diag(1, w**-N)`` and ``diag(1, w**N)`` with b rational.

    w is the denominator of b, or its numerator when b is an integer.
    """
    b = _positive_rational(b)
    _check_a(a)
    if a.is_rational() and a.rational_value() == b:
        raise HypothesisViolation("a must differ from b")
    psi1 = a.minpoly
    n = psi1.degree
    p, q = b.numerator, b.denominator
    if q != 1:
        w, p_eff, phi = q, p, LaurentPoly.monomial(1)
        # q**n * psi1(p/q) = sum a_i p**i q**(n-i), so psi1(b) = M0 / q**n
        M0 = sum(int(c) * p ** i * q ** (n - i) for i, c in enumerate(psi1.coeffs))
        den_exp = n
    else:
        # integer b: run against 1/b, phi = t**-1 takes the value 1/p at b
        w, p_eff, phi = p, 1, LaurentPoly.monomial(-1)
        M0 = sum(int(c) * p ** i for i, c in enumerate(psi1.coeffs))
        den_exp = 0
    if M0 == 0:
        raise HypothesisViolation("b is a root of the minimal polynomial of a")
    extra = {"_denominator_exp": den_exp}
    return _unit_pipeline("rational_b", a, b, psi1, M0, w, p_eff, phi, extra)


def certify_laurent_unit(a: AlgebraicNumber, b: AlgebraicNumber, p: int, q: int, phi: LaurentPoly):
    """Certificates for ``diag(1, q**-N)`` and ``diag(1, q**N)`` from a witness
    ``phi`` in ``Z[t, 1/t]`` with ``phi(b) == p/q``."""
    p, q = int(p), int(q)
    if p == 0:
        raise HypothesisViolation("p must be nonzero")
    if q < 0:
        p, q = -p, -q
    if q in (0, 1):
        raise HypothesisViolation("q must not be 0 or +-1")
    if gcd(p, q) != 1:
        raise HypothesisViolation("p and q must be coprime")
    if not phi.is_integral():
        raise HypothesisViolation("phi must have integer coefficients")
    _check_a(a)
    if b.sign() <= 0:
        raise HypothesisViolation("b must be positive")
    psi1, psi2 = a.minpoly, b.minpoly
    if psi1 == psi2:
        raise HypothesisViolation("a and b share a minimal polynomial")
    if eval_mod(phi, psi2) != Poly([Fraction(p, q)]):
        raise WitnessMismatch(f"phi(b) is not {p}/{q}")
    try:
        bez = bezout_integerized(psi1, psi2)
    except NotCoprime as exc:
        raise HypothesisViolation(f"minimal polynomials are not coprime: {exc}") from None
    # V = a_poly * psi1 vanishes at a and equals m at b
    V = bez.a_poly * psi1
    extra = {"m": bez.m, "phi_bezout": LaurentPoly.from_poly(bez.a_poly),
             "b_poly": LaurentPoly.from_poly(bez.b_poly), "phi": phi, "p": p, "q": q}
    return _unit_pipeline("laurent_unit", a, b, V, bez.m, q, p, phi, extra)


def certify_monic(a: AlgebraicNumber, b: AlgebraicNumber) -> tuple[Certificate, Certificate]:
    """Certificates for ``diag(1, b**n)`` and ``diag(1, b**-n)`` when the
    minimal polynomial of b is monic."""
    psi1, psi2 = a.minpoly, b.minpoly
    if psi1 == psi2:
        raise HypothesisViolation("a and b share a minimal polynomial")
    if not psi2.is_monic():
        raise HypothesisViolation("the minimal polynomial of b is not monic")
    _check_a(a)
    if b.sign() <= 0:
        raise HypothesisViolation("b must be positive")
    if b.is_rational() and b.rational_value() == 1:
        raise HypothesisViolation("b must differ from 1")
    try:
        bez = bezout_integerized(psi1, psi2)
    except NotCoprime as exc:
        raise HypothesisViolation(f"minimal polynomials are not coprime: {exc}") from None
    core = LaurentPoly.from_poly(bez.a_poly * psi1)
    base = {"m": bez.m, "phi_bezout": LaurentPoly.from_poly(bez.a_poly),
            "b_poly": LaurentPoly.from_poly(bez.b_poly)}
    if bez.m == 1:
        out = []
        for n in (1, -1):
            P = (LaurentPoly.monomial(n) - 1) * core + 1
            target = MonomialMatrix.diag(1, Scalar.of(1, b=n))
            out.append(Certificate("monic_b", a, b, target, P, dict(base, n=n)))
        return out[0], out[1]
    lem = monic_lemma(psi2, bez.m)
    n = lem.n
    consts = dict(base, n=n, phi_lemma=lem.phi1, phi2=lem.phi2)
    fwd = Certificate("monic_b", a, b, MonomialMatrix.diag(1, Scalar.of(1, b=n)),
                      -(lem.phi1 * core) + 1, consts)
    back = Certificate("monic_b", a, b, MonomialMatrix.diag(1, Scalar.of(1, b=-n)),
                       (lem.phi1 * core).shift(-n) + 1, dict(consts))
    return fwd, back


def certify(a: AlgebraicNumber, b, phi: Optional[LaurentPoly] = None, p=None, q=None):
    """Pick a regime: rational b, then an explicit witness, then monic b."""
    if not isinstance(b, AlgebraicNumber):
        return certify_rational_b(a, b)
    if b.is_rational():
        return certify_rational_b(a, b.rational_value())
    if phi is not None:
        if p is None or q is None:
            val = eval_mod(phi, b.minpoly)
            if val.degree > 0:
                raise WitnessMismatch("phi(b) is not rational")
            v = Fraction(val[0])
            p, q = v.numerator, v.denominator
        return certify_laurent_unit(a, b, p, q, phi)
    if b.minpoly.is_monic():
        return certify_monic(a, b)
    raise HypothesisViolation("no regime applies: b is irrational, non-monic, and no witness phi was given")

"""Standalone certificate replay.

Deliberately self-contained: Laurent polynomials are plain ``{exponent:
Fraction}`` dicts and reduction modulo a minimal polynomial is a dozen lines
of long division, so nothing here runs through the constructors' arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Lp = dict  # exponent -> Fraction


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""
    nontrivial: bool = False

    def __bool__(self):
        return self.accepted


def _lp(x) -> Lp:
    if isinstance(x, dict):
        return {int(k): Fraction(v) for k, v in x.items() if v}
    # duck-typed: anything with .lowest and .coeffs
    return {x.lowest + i: Fraction(c) for i, c in enumerate(x.coeffs) if c}


def _add(f: Lp, g: Lp, k=1) -> Lp:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + k * c
        if not out[e]:
            del out[e]
    return out


def _mul(f: Lp, g: Lp) -> Lp:
    out: Lp = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _pow(f: Lp, n: int) -> Lp:
    out = {0: Fraction(1)}
    for _ in range(n):
        out = _mul(out, f)
    return out


def _const(c) -> Lp:
    return {0: Fraction(c)} if c else {}


def _divides(psi: list, f: Lp) -> bool:
    """Does the polynomial ``psi`` (low-first list) divide the Laurent f?"""
    if not f:
        return True
    if psi[0] == 0:
        return False
    lo = min(f)
    r = [Fraction(0)] * (max(f) - lo + 1)
    for e, c in f.items():
        r[e - lo] = Fraction(c)
    d = len(psi) - 1
    lead = Fraction(psi[-1])
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top] / lead
        if c:
            for i in range(d + 1):
                r[top - d + i] -= c * psi[i]
    return not any(r[:d])


def _eval(f: Lp, x: Fraction) -> Fraction:
    return sum((c * x ** e for e, c in f.items()), Fraction(0))


def _poly_eval_int(psi: list, x: Fraction) -> Fraction:
    return sum((Fraction(c) * x ** i for i, c in enumerate(psi)), Fraction(0))


def _entry(scalar):
    """(coeff, b-exponent) of a target entry, or None if it uses other symbols."""
    mono = scalar.mono
    if mono.radical:
        return None
    exps = dict(mono.exps)
    if set(exps) - {"b"}:
        return None
    return Fraction(scalar.coeff), exps.get("b", 0)


def verify_certificate(cert) -> Verdict:
    try:
        return _verify(cert)
    except (ArithmeticError, KeyError, TypeError, ValueError, AttributeError) as exc:
        return Verdict(False, f"malformed certificate: {type(exc).__name__}: {exc}")


def _verify(cert) -> Verdict:
    if cert.target.shape != "diagonal" or len(cert.target.entries) != 2:
        return Verdict(False, "target must be a 2x2 diagonal matrix")
    e1, e2 = _entry(cert.target.entries[0]), _entry(cert.target.entries[1])
    if e1 is None or e2 is None:
        return Verdict(False, "target entries must be rational multiples of powers of b")
    if e1 != (1, 0):
        return Verdict(False, "first target entry must be 1")
    P = _lp(cert.identity)
    if any(c.denominator != 1 for c in P.values()):
        return Verdict(False, "identity has non-integer coefficients")
    psi1 = [Fraction(c) for c in cert.a.minpoly.coeffs]
    if not _divides(psi1, _add(P, _const(1), -1)):
        return Verdict(False, "identity does not reduce to 1 at a")
    coeff, k = e2
    b = cert.b
    if hasattr(b, "minpoly"):
        psi2 = [Fraction(c) for c in b.minpoly.coeffs]
        if len(psi2) == 2:
            bval = Fraction(-psi2[0], psi2[1])
            ok = _eval(P, bval) == coeff * bval ** k
        else:
            ok = _divides(psi2, _add(P, {k: coeff}, -1))
    else:
        bval = Fraction(b)
        ok = _eval(P, bval) == coeff * bval ** k
    if not ok:
        return Verdict(False, "identity does not evaluate to the target at b")
    bad = _check_constants(cert, P)
    if bad:
        return Verdict(False, bad)
    nontrivial = not (coeff == 1 and k == 0)
    return Verdict(True, "replayed", nontrivial)


def _check_constants(cert, P: Lp) -> str:
    c = cert.constants
    regime = cert.regime
    if regime == "trivial":
        return "" if P == {0: 1} else "trivial certificate must have identity 1"
    psi1 = _lp({i: v for i, v in enumerate(cert.a.minpoly.coeffs)})
    if regime in ("laurent_unit", "monic_b"):
        psi2 = _lp({i: v for i, v in enumerate(cert.b.minpoly.coeffs)})
        lhs = _add(_mul(_lp(c["phi_bezout"]), psi1), _mul(_lp(c["b_poly"]), psi2))
        if lhs != _const(c["m"]) or int(c["m"]) <= 0:
            return "Bezout constants do not satisfy a*psi1 + b*psi2 = m"
    if regime == "monic_b":
        return _check_monic(cert, P, psi1)
    if regime not in ("rational_b", "laurent_unit"):
        return f"unknown regime {regime!r}"
    amp, r, e, s, N, K, x, y = (int(c[k]) for k in ("amp", "r", "e", "s", "N", "K", "x", "y"))
    coeff, k = _entry(cert.target.entries[1])
    if k != 0:
        return "rational regimes need a rational target"
    if regime == "rational_b":
        b = Fraction(cert.b)
        if b.denominator != 1:
            w, pnum, phi = b.denominator, b.numerator, {1: Fraction(1)}
        else:
            w, pnum, phi = b.numerator, 1, {-1: Fraction(1)}
        V = psi1
        # amp * V(b) == r * w**e
        if amp * _eval(V, b) != r * Fraction(w) ** e:
            return "q-adic constants do not match psi1(b)"
    else:
        pnum, w = int(c["p"]), int(c["q"])
        phi = _lp(c["phi"])
        psi2 = [Fraction(v) for v in cert.b.minpoly.coeffs]
        if not _divides(psi2, _add(_mul(phi, {0: Fraction(w)}), _const(pnum), -1)):
            return "phi(b) != p/q"
        if gcd(pnum, w) != 1 or w < 2:
            return "p/q must be reduced with q >= 2"
        V = _mul(_lp(c["phi_bezout"]), psi1)
        if amp * int(c["m"]) != r * w ** e:
            return "q-adic constants do not match m"
    if amp <= 0 or gcd(r, w) != 1:
        return "q-adic constants are not normalised"
    if N < 1 or s * r + w ** N != 1:
        return "unit-power constants fail s*r + w**N = 1"
    if coeff == Fraction(w) ** N:
        want_K, cc = e, -s
    elif coeff == Fraction(1, w ** N):
        want_K, cc = N + e, s
    else:
        return "target entry is not w**N or w**-N"
    if K != want_K:
        return "exponent K inconsistent with the target"
    if K >= 1:
        if x * pnum ** K + y * w ** K != cc:
            return "Bezout pair on powers fails"
        X = _add(_mul(_pow(phi, K), _const(x)), _const(y))
    else:
        if x or y:
            return "x, y must vanish when K <= 0"
        X = _const(cc * w ** (-K))
    expect = _add(_mul(_mul(X, V), _const(amp)), _const(1))
    if expect != P:
        return "identity does not match its constants"
    return ""


def _check_monic(cert, P: Lp, psi1: Lp) -> str:
    c = cert.constants
    m, n = int(c["m"]), int(c["n"])
    coeff, k = _entry(cert.target.entries[1])
    psi2 = _lp({i: v for i, v in enumerate(cert.b.minpoly.coeffs)})
    if cert.b.minpoly.coeffs[-1] != 1:
        return "psi2 is not monic"
    if coeff != 1 or k not in (n, -n) or n == 0:
        return "target must be b**n or b**-n"
    core = _mul(_lp(c["phi_bezout"]), psi1)
    if m == 1:
        if n not in (1, -1) or k != n:
            return "short form needs n = +-1 and target b**n"
        expect = _add(_mul(_add({n: Fraction(1)}, _const(1), -1), core), _const(1))
    else:
        phi1, phi2 = _lp(c["phi_lemma"]), _lp(c["phi2"])
        lemma = _add(_add(_mul(phi1, _const(m)), _mul(psi2, phi2)), {n: Fraction(1)})
        if lemma != _const(1):
            return "lemma constants fail m*phi1 + psi*phi2 + t**n = 1"
        term = _mul(phi1, core)
        if k == n:
            expect = _add(_const(1), term, -1)
        else:
            expect = _add(_mul({-n: Fraction(1)}, term), _const(1))
    if expect != P:
        return "identity does not match its constants"
    return ""

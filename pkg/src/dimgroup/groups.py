"""Basis-resolved additive subgroups of R^n.

A presentation describes ``G = sum over slots of R_s * v_s`` where each slot
vector ``v_s`` has a monomial (or 0) in every coordinate and ``R_s`` is one of
Z, Q or the zero ring.  Slots come in families indexed by a degree d and are
generated by :class:`BasisRule` objects whose coordinates are affine exponent
patterns in d, so the group is described intensionally rather than by
enumeration.

Standing model assumption: distinct monomials in the presentation's symbols
(and cbrt 2) are linearly independent over Q.  Under it, membership is a
per-slot ring check and the invariance of G under a monomial matrix is decided
slot by slot.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    InexpressibleAction,
    InvalidInput,
    InvalidParams,
    NeedsRefinement,
    SearchExhausted,
    UnknownBasisMonomial,
)
from .exactnum import SymbolicReal
from .symbolic import (
    Interval,
    Mono,
    Scalar,
    SymExpr,
    expr_add,
    expr_const,
    expr_interval,
    expr_is_rational,
    expr_mul,
    expr_mul_mono,
    expr_scale,
    expr_sign,
    sqrt_upper,
)

SlotKey = Tuple[int, int, str]  # (radical, degree, family)
CoordVector = Tuple[SymExpr, ...]
RINGS = ("Z", "Q", "zero")

ANY_DEGREE = object()


# ---------------------------------------------------------------------------
# exponent patterns

@dataclass(frozen=True)
class Pattern:
    """Coordinate monomial ``cbrt2**radical * prod(s**(slope_s*d + offset_s))``."""

    radical: int = 0
    slope: Tuple[Tuple[str, int], ...] = ()
    offset: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, radical=0, slope=None, offset=None) -> "Pattern":
        s = tuple(sorted((k, v) for k, v in (slope or {}).items() if v))
        o = tuple(sorted((k, v) for k, v in (offset or {}).items() if v))
        return cls(radical, s, o)

    def at(self, d: int) -> Mono:
        e = dict(self.offset)
        for k, v in self.slope:
            e[k] = e.get(k, 0) + v * d
        return Mono(self.radical, tuple(sorted((k, v) for k, v in e.items() if v)))

    def max_slope(self) -> int:
        return max((abs(v) for _, v in self.slope), default=0)

    def symbols(self) -> set:
        return {k for k, _ in self.slope} | {k for k, _ in self.offset}

    def solve(self, mono: Mono):
        """Degree d with ``self.at(d) == mono``; ANY_DEGREE for constant
        patterns that match, None when nothing matches."""
        if mono.radical != self.radical:
            return None
        slope, offset, e = dict(self.slope), dict(self.offset), mono.exp_dict()
        d = None
        for name in set(slope) | set(offset) | set(e):
            s, o, x = slope.get(name, 0), offset.get(name, 0), e.get(name, 0)
            if s == 0:
                if x != o:
                    return None
                continue
            if (x - o) % s:
                return None
            cand = (x - o) // s
            if d is None:
                d = cand
            elif d != cand:
                return None
        return ANY_DEGREE if d is None else d

    def __str__(self):
        parts = []
        if self.radical == 1:
            parts.append("cbrt2")
        elif self.radical == 2:
            parts.append("cbrt4")
        slope, offset = dict(self.slope), dict(self.offset)
        for name in sorted(set(slope) | set(offset)):
            s, o = slope.get(name, 0), offset.get(name, 0)
            if s == 0:
                parts.append(name if o == 1 else f"{name}^{o}")
                continue
            lin = "d" if s == 1 else "-d" if s == -1 else f"{s}d"
            if o == 0:
                parts.append(f"{name}^{lin}")
            else:
                parts.append(f"{name}^({lin}{o:+d})")
        return "*".join(parts) if parts else "1"


_EXP_RE = re.compile(r"^\(?\s*(?:([+-]?\d*)\s*\*?\s*d)?\s*([+-]?\s*\d+)?\s*\)?$")


def parse_pattern(text: str) -> Optional[Pattern]:
    """Parse strings like ``"alpha^d"``, ``"cbrt2*alpha^(2d+1)"``, ``"beta"``, ``"0"``."""
    text = text.strip().replace(" ", "")
    if text == "0":
        return None
    radical = 0
    slope: Dict[str, int] = {}
    offset: Dict[str, int] = {}
    for factor in text.split("*"):
        if factor in ("", "1"):
            continue
        if factor == "cbrt2":
            radical += 1
            continue
        if factor == "cbrt4":
            radical += 2
            continue
        name, _, exp = factor.partition("^")
        if not re.fullmatch(r"[A-Za-z_]\w*", name) or name == "d":
            raise InvalidInput(f"bad coordinate factor {factor!r}")
        if not exp:
            s, o = 0, 1
        else:
            m = _EXP_RE.match(exp)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise InvalidInput(f"bad exponent {exp!r}")
            if "d" in exp:
                raw = m.group(1)
                s = 1 if raw in ("", "+") else -1 if raw == "-" else int(raw)
            else:
                s = 0
            o = int(m.group(2).replace(" ", "")) if m.group(2) else 0
        slope[name] = slope.get(name, 0) + s
        offset[name] = offset.get(name, 0) + o
    if radical > 2:
        raise InvalidInput("radical part must be cbrt2 or cbrt4")
    return Pattern.of(radical, slope, offset)


# ---------------------------------------------------------------------------
# rules and presentations

@dataclass(frozen=True)
class BasisRule:
    radical: int
    degrees: Union[str, Tuple[int, ...]]  # "even", "odd", "all" or explicit degrees
    ring: str
    coords: Tuple[Optional[Pattern], ...]
    family: str = "main"

    def __post_init__(self):
        if self.ring not in RINGS:
            raise InvalidParams(f"unknown ring {self.ring!r}")
        if isinstance(self.degrees, str):
            if self.degrees not in ("even", "odd", "all"):
                raise InvalidParams(f"unknown degree class {self.degrees!r}")
        else:
            object.__setattr__(self, "degrees", tuple(sorted(set(int(d) for d in self.degrees))))
        if all(c is None for c in self.coords):
            raise InvalidParams("a basis rule needs at least one nonzero coordinate")

    def finite(self) -> bool:
        return not isinstance(self.degrees, str)

    def contains(self, d: int) -> bool:
        if self.degrees == "all":
            return True
        if self.degrees == "even":
            return d % 2 == 0
        if self.degrees == "odd":
            return d % 2 == 1
        return d in self.degrees

    def parity_label(self) -> str:
        return self.degrees if isinstance(self.degrees, str) and self.degrees != "all" else ""

    def vector(self, d: int) -> Tuple[Optional[Mono], ...]:
        return tuple(None if p is None else p.at(d) for p in self.coords)


def coeff_add(a: Mapping, b: Mapping, scale=1) -> Dict:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + v * scale
        if x:
            out[k] = Fraction(x)
        else:
            out.pop(k, None)
    return out


def coeff_scale(a: Mapping, c) -> Dict:
    c = Fraction(c)
    return {k: v * c for k, v in a.items()} if c else {}


@dataclass(frozen=True)
class GroupPresentation:
    dim: int
    symbols: Tuple[SymbolicReal, ...]
    rules: Tuple[BasisRule, ...]
    tag: str = "custom"
    assumptions: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise InvalidParams("symbol names must be distinct")
        for rule in self.rules:
            if len(rule.coords) != self.dim:
                raise InvalidParams("rule coordinate count does not match dim")
            for p in rule.coords:
                if p is not None and not p.symbols() <= set(names):
                    raise InvalidParams(f"pattern {p} uses an undeclared symbol")
            if not rule.finite() and all(p is None or p.max_slope() == 0 for p in rule.coords):
                raise InvalidParams("an infinite degree class needs a degree-dependent coordinate")
        self._check_distinct()
        unit, why = self.resolve(tuple(expr_const(1) for _ in range(self.dim)))
        if unit is None:
            raise InvalidParams(f"order unit is not in the span of the basis: {why}")
        ok, why = membership(unit, self)
        if not ok:
            raise InvalidParams(f"order unit is not a member: {why}")

    # -- structure -----------------------------------------------------------
    @property
    def symbol_names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    @cached_property
    def period(self) -> int:
        p = 2
        for rule in self.rules:
            for c in rule.coords:
                if c is not None and c.max_slope():
                    p = math.lcm(p, c.max_slope())
        return p

    @cached_property
    def finite_span(self) -> int:
        """Largest |degree| or |exponent| mentioned by finite rules."""
        out = 0
        for rule in self.rules:
            if rule.finite():
                out = max(out, max((abs(d) for d in rule.degrees), default=0))
            for c in rule.coords:
                if c is not None:
                    out = max(out, max((abs(v) for _, v in c.offset), default=0))
        return out

    def _check_distinct(self):
        seen: Dict[Tuple[int, Mono], SlotKey] = {}
        for key in self.window_slots(self.finite_span + 2 * self.period + 2):
            for j, m in enumerate(self.rule_for(key).vector(key[1])):
                if m is None:
                    continue
                other = seen.setdefault((j, m), key)
                if other != key:
                    raise InvalidParams(f"slots {other} and {key} share coordinate {j} monomial {m}")

    def rule_for(self, key: SlotKey) -> BasisRule:
        radical, degree, family = key
        hits = [r for r in self.rules if r.family == family and r.radical == radical and r.contains(degree)]
        if not hits:
            raise UnknownBasisMonomial(f"no basis slot (radical={radical}, degree={degree}, family={family!r})")
        if len(hits) > 1:
            raise InvalidParams(f"slot {key} is described by several rules")
        return hits[0]

    def slot_vector(self, key: SlotKey) -> CoordVector:
        vec = self.rule_for(key).vector(key[1])
        return tuple({} if m is None else {m: Fraction(1)} for m in vec)

    def window_slots(self, W: int) -> list:
        keys = set()
        for rule in self.rules:
            ds = rule.degrees if rule.finite() else [d for d in range(-W, W + 1) if rule.contains(d)]
            for d in ds:
                keys.add((rule.radical, d, rule.family))
        return sorted(keys, key=lambda k: (abs(k[1]), k[2], k[0], k[1]))

    def vector_of(self, coeffs: Mapping) -> CoordVector:
        out = [dict() for _ in range(self.dim)]
        for key, c in coeffs.items():
            for j, m in enumerate(self.rule_for(key).vector(key[1])):
                if m is not None:
                    out[j] = expr_add(out[j], {m: Fraction(c)})
        return tuple(out)

    def lookup(self, j: int, mono: Mono) -> Optional[SlotKey]:
        hits = []
        for rule in self.rules:
            p = rule.coords[j]
            if p is None:
                continue
            d = p.solve(mono)
            if d is None:
                continue
            if d is ANY_DEGREE:
                ds = [x for x in rule.degrees] if rule.finite() else []
            else:
                ds = [d] if rule.contains(d) else []
            hits.extend((rule.radical, x, rule.family) for x in ds)
        if len(hits) > 1:
            raise InvalidParams(f"coordinate {j} monomial {mono} matches several slots")
        return hits[0] if hits else None

    def resolve(self, vec: Sequence[SymExpr]) -> tuple[Optional[Dict], str]:
        """Write a coordinate vector over the slot basis.

        Returns ``(coeffs, "")`` or ``(None, reason)`` when the vector is not
        in the Q-span of the slot vectors.
        """
        if len(vec) != self.dim:
            return None, "dimension mismatch"
        coeffs: Dict[SlotKey, Fraction] = {}
        for j, expr in enumerate(vec):
            for mono, c in expr.items():
                key = self.lookup(j, mono)
                if key is None:
                    return None, f"coordinate {j + 1} term {mono} lies outside every basis slot"
                prev = coeffs.setdefault(key, Fraction(c))
                if prev != c:
                    return None, f"slot {key} would need coefficients {prev} and {c} in different coordinates"
        for key, c in coeffs.items():
            vec_key = self.rule_for(key).vector(key[1])
            for j, m in enumerate(vec_key):
                if m is not None and vec[j].get(m, 0) != c:
                    return None, f"slot {key} is only partially present in coordinate {j + 1}"
        return coeffs, ""

    # -- numerics ------------------------------------------------------------
    def enclosures(self) -> Dict[str, Interval]:
        out = {}
        for s in self.symbols:
            lo, hi = s.enclosure()
            out[s.name] = Interval(lo, hi)
        return out

    def has_numerics(self) -> bool:
        return all(s.approx is not None for s in self.symbols)

    @cached_property
    def unit(self) -> "GroupElement":
        coeffs, _ = self.resolve(tuple(expr_const(1) for _ in range(self.dim)))
        return GroupElement(self, coeffs)

    def describe(self) -> str:
        rows = [f"{self.tag} presentation in R^{self.dim} over {', '.join(self.symbol_names) or 'no symbols'}"]
        for r in self.rules:
            coords = ", ".join("0" if c is None else str(c) for c in r.coords)
            deg = r.degrees if isinstance(r.degrees, str) else list(r.degrees)
            rows.append(f"  [{r.family}] radical {r.radical}, degrees {deg}: {r.ring} * ({coords})")
        return "\n".join(rows)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A member of G given by its slot coefficients (zero entries dropped)."""

    presentation: GroupPresentation
    coeffs: Mapping

    def __post_init__(self):
        clean = {tuple(k): Fraction(v) for k, v in dict(self.coeffs).items() if v != 0}
        object.__setattr__(self, "coeffs", clean)
        ok, why = membership(clean, self.presentation)
        if not ok:
            raise InvalidInput(f"not a member: {why}")

    def vector(self) -> CoordVector:
        return self.presentation.vector_of(self.coeffs)

    def __add__(self, other):
        return GroupElement(self.presentation, coeff_add(self.coeffs, _coeffs(other)))

    def __sub__(self, other):
        return GroupElement(self.presentation, coeff_add(self.coeffs, _coeffs(other), -1))

    def __neg__(self):
        return GroupElement(self.presentation, coeff_scale(self.coeffs, -1))

    def __eq__(self, other):
        if isinstance(other, GroupElement):
            return self.coeffs == other.coeffs
        if isinstance(other, Mapping):
            return self.coeffs == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        return f"GroupElement({self.coeffs!r})"


def _coeffs(x) -> Dict:
    if isinstance(x, GroupElement):
        return dict(x.coeffs)
    return {tuple(k): Fraction(v) for k, v in dict(x).items() if v}


def _as_coeffs(x, P: GroupPresentation) -> tuple[Optional[Dict], str]:
    if isinstance(x, GroupElement):
        return dict(x.coeffs), ""
    if isinstance(x, tuple) and len(x) == P.dim and all(isinstance(e, dict) for e in x):
        return P.resolve(x)
    return _coeffs(x), ""


def membership(x, P: GroupPresentation) -> tuple[bool, str]:
    """Membership with a human-readable reason.

    ``x`` is a slot coefficient map, a :class:`GroupElement`, or a coordinate
    vector (tuple of expressions).  Slot keys that no rule describes raise
    :class:`UnknownBasisMonomial`.
    """
    coeffs, why = _as_coeffs(x, P)
    if coeffs is None:
        return False, why
    for key in sorted(coeffs):
        c = Fraction(coeffs[key])
        rule = P.rule_for(key)
        if c == 0:
            continue
        if rule.ring == "zero":
            return False, f"slot (radical {key[0]}, degree {key[1]}) admits only 0"
        if rule.ring == "Z" and c.denominator != 1:
            parity = rule.parity_label()
            lead = f"{parity}-degree coefficient" if parity else "coefficient"
            return False, f"{lead} not integral (radical {key[0]}, degree {key[1]}, coeff {c})"
    return True, "member"


def is_member(x, P: GroupPresentation) -> bool:
    return membership(x, P)[0]


# ---------------------------------------------------------------------------
# monomial matrices

@dataclass(frozen=True)
class MonomialMatrix:
    """Positive diagonal or antidiagonal matrix acting on row vectors.

    For the antidiagonal shape ``entries[i]`` sits in row i, column n-1-i, so
    ``(v M)[n-1-i] = v[i] * entries[i]``.
    """

    shape: str
    entries: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.shape not in ("diagonal", "antidiagonal"):
            raise InvalidInput(f"unknown matrix shape {self.shape!r}")
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if e.coeff <= 0:
                raise InvalidInput("monomial matrix entries must have positive rational part")

    @classmethod
    def diag(cls, *entries) -> "MonomialMatrix":
        return cls("diagonal", tuple(_scalar(e) for e in entries))

    @classmethod
    def antidiag(cls, *entries) -> "MonomialMatrix":
        return cls("antidiagonal", tuple(_scalar(e) for e in entries))

    @classmethod
    def identity(cls, dim: int) -> "MonomialMatrix":
        return cls.diag(*([1] * dim))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def target(self, i: int) -> int:
        return i if self.shape == "diagonal" else self.dim - 1 - i

    def symbols(self) -> set:
        out = set()
        for e in self.entries:
            out |= e.symbols()
        return out

    def max_exponent(self) -> int:
        return max((abs(v) for e in self.entries for _, v in e.mono.exps), default=0)

    def is_identity(self) -> bool:
        return self.shape == "diagonal" and all(e.is_one() for e in self.entries)

    def act(self, vec: Sequence[SymExpr]) -> CoordVector:
        out: list = [dict() for _ in range(self.dim)]
        for i, e in enumerate(self.entries):
            out[self.target(i)] = expr_mul_mono(vec[i], e.coeff, e.mono)
        return tuple(out)

    def then(self, other: "MonomialMatrix") -> "MonomialMatrix":
        """The product ``self @ other``: act by self, then by other."""
        entries = [None] * self.dim
        for i, e in enumerate(self.entries):
            entries[i] = e * other.entries[self.target(i)]
        shape = "diagonal" if self.shape == other.shape else "antidiagonal"
        return MonomialMatrix(shape, tuple(entries))

    __matmul__ = then

    def inverse(self) -> "MonomialMatrix":
        entries = [None] * self.dim
        for i, e in enumerate(self.entries):
            entries[self.target(i)] = e.inverse()
        return MonomialMatrix(self.shape, tuple(entries))

    def power(self, n: int) -> "MonomialMatrix":
        base = self if n >= 0 else self.inverse()
        out = MonomialMatrix.identity(self.dim)
        for _ in range(abs(n)):
            out = out.then(base)
        return out

    def __str__(self):
        body = ", ".join(str(e) for e in self.entries)
        return f"{'diag' if self.shape == 'diagonal' else 'antidiag'}({body})"


def _scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(Fraction(x))


def _check_expressible(M: MonomialMatrix, P: GroupPresentation):
    if M.dim != P.dim:
        raise InexpressibleAction(f"matrix of size {M.dim} acting on R^{P.dim}")
    extra = M.symbols() - set(P.symbol_names)
    if extra:
        raise InexpressibleAction(f"matrix entries use symbols {sorted(extra)} not in the presentation")


def apply_monomial(g, M: MonomialMatrix, P: GroupPresentation) -> CoordVector:
    """Right action ``g -> g M`` on a member (or coefficient map).

    The result is a coordinate vector; feed it to :func:`membership` or
    :meth:`GroupPresentation.resolve` to read it back over the slot basis.
    """
    _check_expressible(M, P)
    coeffs, why = _as_coeffs(g, P)
    if coeffs is None:
        raise InvalidInput(why)
    return M.act(P.vector_of(coeffs))


# ---------------------------------------------------------------------------
# invariance

@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    witness: Optional[Dict] = None
    direction: str = ""  # "forward": witness*M not in G; "inverse": witness*M^-1 not in G
    reason: str = ""
    window: int = 0
    slots_checked: int = 0
    slot_map: Tuple = ()

    def __bool__(self):
        return self.invariant


def invariance_window(M: MonomialMatrix, P: GroupPresentation) -> int:
    # Away from finite rules every slot family is periodic in d with period
    # P.period and a monomial matrix shifts degrees by at most its largest
    # exponent, so this window sees every distinct slot-level behaviour.
    return P.finite_span + M.max_exponent() + 2 * P.period + 2


def _containment(M: MonomialMatrix, P: GroupPresentation, W: int):
    slot_map = []
    count = 0
    for key in P.window_slots(W):
        rule = P.rule_for(key)
        if rule.ring == "zero":
            continue
        count += 1
        img = M.act(P.slot_vector(key))
        coeffs, why = P.resolve(img)
        if coeffs is None:
            return {key: Fraction(1)}, f"image of slot {key} is outside span(G): {why}", count, slot_map
        for k2, c in sorted(coeffs.items()):
            ring2 = P.rule_for(k2).ring
            if ring2 == "zero":
                return {key: Fraction(1)}, f"slot {key} maps into the zero slot {k2}", count, slot_map
            if rule.ring == "Q" and ring2 == "Z":
                return {key: 1 / (2 * c)}, f"Q-slot {key} maps onto Z-slot {k2} (Q*{c} is not in Z)", count, slot_map
            if rule.ring == "Z" and ring2 == "Z" and c.denominator != 1:
                return {key: Fraction(1)}, f"Z-slot {key} maps to {c} times Z-slot {k2}", count, slot_map
        slot_map.append((key, tuple(sorted(coeffs.items()))))
    return None, "", count, slot_map


def check_invariance(M: MonomialMatrix, P: GroupPresentation) -> InvarianceResult:
    """Decide ``G M == G`` by checking ``G M ⊆ G`` and ``G M^-1 ⊆ G`` on slots."""
    _check_expressible(M, P)
    W = invariance_window(M, P)
    wit, why, n1, fwd_map = _containment(M, P, W)
    if wit is not None:
        return InvarianceResult(False, wit, "forward", why, W, n1)
    wit, why, n2, _ = _containment(M.inverse(), P, W)
    if wit is not None:
        return InvarianceResult(False, wit, "inverse", why, W, n1 + n2)
    return InvarianceResult(True, None, "", "", W, n1 + n2, tuple(fwd_map))


def replay_witness(result: InvarianceResult, M: MonomialMatrix, P: GroupPresentation) -> bool:
    """True when the witness is a member whose image leaves G."""
    if result.invariant or result.witness is None:
        return False
    if not is_member(result.witness, P):
        return False
    N = M if result.direction == "forward" else M.inverse()
    return not is_member(apply_monomial(result.witness, N, P), P)


# ---------------------------------------------------------------------------
# states, order

@dataclass(frozen=True)
class StateValue:
    expr: SymExpr
    enclosure: Optional[Interval] = None

    def rational(self) -> Optional[Fraction]:
        if not self.expr:
            return Fraction(0)
        if expr_is_rational(self.expr):
            return self.expr[Mono.one()]
        return None


def state_eval(k: int, g, P: GroupPresentation) -> StateValue:
    """Coordinate state ``phi_k`` (1-based) on a member."""
    if not 1 <= k <= P.dim:
        raise InvalidInput(f"state index {k} outside 1..{P.dim}")
    coeffs, why = _as_coeffs(g, P)
    if coeffs is None:
        raise InvalidInput(why)
    expr = P.vector_of(coeffs)[k - 1]
    enc = None
    if P.has_numerics() or expr_is_rational(expr):
        enc = expr_interval(expr, P.enclosures() if P.has_numerics() else {})
    return StateValue(expr, enc)


def is_positive(x, P: GroupPresentation) -> bool:
    """Membership in the cone ``{all coordinates > 0} ∪ {0}``."""
    coeffs, why = _as_coeffs(x, P)
    if coeffs is None:
        raise InvalidInput(why)
    if not coeffs:
        return True
    vec = P.vector_of(coeffs)
    enc = P.enclosures() if P.has_numerics() else {}
    return all(expr_sign(c, enc) > 0 for c in vec)


def leq(x, y, P: GroupPresentation) -> bool:
    return is_positive(coeff_add(_coeffs(y), _coeffs(x), -1), P)


# ---------------------------------------------------------------------------
# density witnesses

@dataclass(frozen=True)
class DensityWitness:
    elements: Tuple[Dict, ...]
    norm_bounds: Tuple[Fraction, ...]  # certified upper bounds on Euclidean norms
    determinant: SymExpr


def _norm_upper(vec: CoordVector, enc) -> Fraction:
    acc = Interval.point(0)
    for c in vec:
        acc = acc + expr_interval(c, enc).square()
    return sqrt_upper(acc.hi)


def _symbolic_det(rows: Sequence[Sequence[SymExpr]]) -> SymExpr:
    n = len(rows)
    if n == 1:
        return dict(rows[0][0])
    out: SymExpr = {}
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = expr_mul(rows[0][j], _symbolic_det(minor))
        out = expr_add(out, term, -1 if j % 2 else 1)
    return out


def _independent(vectors: Sequence[CoordVector]) -> bool:
    k = len(vectors)
    n = len(vectors[0])
    for cols in itertools.combinations(range(n), k):
        rows = [[v[c] for c in cols] for v in vectors]
        if _symbolic_det(rows):
            return True
    return False


def _convergents(x: Fraction, max_den: int):
    """Continued-fraction convergents h/k of a positive rational x."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    while True:
        a = math.floor(x)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            return
        yield h1, k1
        frac = x - a
        if frac == 0:
            return
        x = 1 / frac


def _parallel_ratio(v1: CoordVector, v2: CoordVector) -> Optional[Scalar]:
    """Monomial ratio r with ``v2 == r * v1`` when both are monomial vectors."""
    ratio = None
    for a, b in zip(v1, v2):
        if bool(a) != bool(b):
            return None
        if not a:
            continue
        if len(a) != 1 or len(b) != 1:
            return None
        (ma, ca), = a.items()
        (mb, cb), = b.items()
        f, inv = ma.inverse()
        g, m = mb.mul(inv)
        r = Scalar(cb / ca * f * g, m)
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio


def _density_candidates(P: GroupPresentation, eps: Fraction, enc, max_den: int, window: int):
    slots = [k for k in P.window_slots(window) if P.rule_for(k).ring != "zero"]
    eps2 = eps * eps
    for key in slots:
        if P.rule_for(key).ring != "Q":
            continue
        vec = P.slot_vector(key)
        acc = Interval.point(0)
        for c in vec:
            acc = acc + expr_interval(c, enc).square()
        D = math.isqrt(math.floor(acc.hi / eps2)) + 1
        if D <= max_den:
            yield {key: Fraction(1, D)}
    for k1, k2 in itertools.combinations(slots, 2):
        v1, v2 = P.slot_vector(k1), P.slot_vector(k2)
        ratio = _parallel_ratio(v1, v2)
        if ratio is None or ratio.mono.is_one():
            continue
        iv = expr_interval({ratio.mono: ratio.coeff}, enc)
        x = (iv.lo + iv.hi) / 2
        if x <= 0:
            continue
        for h, k in _convergents(x, max_den):
            yield {k1: Fraction(-h), k2: Fraction(k)}


def density_witness(P: GroupPresentation, eps, max_den: int = 1 << 16, window: int = 3) -> DensityWitness:
    """``dim`` members, linearly independent over R, each of norm < eps.

    Candidates are rational scalings of single Q-slots and integer
    combinations of parallel slot pairs taken from continued-fraction
    convergents; norms are certified by outward interval bounds and
    independence by a nonzero symbolic minor.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidInput("eps must be positive")
    if not P.has_numerics():
        raise InvalidInput("density search needs numeric approximations for every symbol")
    enc = P.enclosures()
    chosen, bounds, vectors = [], [], []
    seen = 0
    for cand in _density_candidates(P, eps, enc, max_den, window):
        seen += 1
        vec = P.vector_of(cand)
        try:
            bound = _norm_upper(vec, enc)
        except NeedsRefinement:
            continue
        if bound >= eps or not any(vec):
            continue
        if vectors and not _independent(vectors + [vec]):
            continue
        chosen.append(cand)
        bounds.append(bound)
        vectors.append(vec)
        if len(chosen) == P.dim:
            det = _symbolic_det([list(v) for v in vectors])
            return DensityWitness(tuple(chosen), tuple(bounds), det)
    raise SearchExhausted(
        f"found {len(chosen)} of {P.dim} independent vectors below eps={eps} "
        f"after {seen} candidates (slot window {window}, denominators <= {max_den})"
    )


# ---------------------------------------------------------------------------
# Riesz interpolation

def _leq_safe(x, y, P) -> bool:
    try:
        return leq(x, y, P)
    except NeedsRefinement:
        return False


def _solve_numeric(rows, rhs):
    """Solve a small dense system by Gaussian elimination in floats."""
    n = len(rows)
    a = [list(map(float, r)) + [float(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) < 1e-300:
            return None
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col:
                f = a[r][col] / a[col][col]
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]


def riesz_interpolate(P: GroupPresentation, g1, g2, h1, h2, attempts: int = 12) -> Dict:
    """An element z with ``g_i <= z <= h_j`` for all i, j."""
    lows = [_coeffs(g1), _coeffs(g2)]
    highs = [_coeffs(h1), _coeffs(h2)]
    for x in lows + highs:
        if not is_member(x, P):
            raise InvalidInput("interpolation endpoints must be members")
    for g in lows:
        for h in highs:
            if not leq(g, h, P):
                raise InvalidInput("interpolation needs g_i <= h_j for all i, j")

    def works(z) -> bool:
        return all(_leq_safe(g, z, P) for g in lows) and all(_leq_safe(z, h, P) for h in highs)

    # exact candidates first: midpoints of endpoint pairs, then the endpoints
    exact = [coeff_scale(coeff_add(g, h), Fraction(1, 2)) for g in lows for h in highs]
    exact += lows + highs
    for z in exact:
        if is_member(z, P) and works(z):
            return z
    if not P.has_numerics():
        raise SearchExhausted("no exact interpolant and no numeric data for a density search")
    enc = P.enclosures()
    lo_box, hi_box = [], []
    for j in range(P.dim):
        lo_box.append(max(expr_interval(P.vector_of(g)[j], enc).hi for g in lows))
        hi_box.append(min(expr_interval(P.vector_of(h)[j], enc).lo for h in highs))
    width = min(h - l for l, h in zip(lo_box, hi_box))
    if width <= 0:
        raise SearchExhausted("interpolation box has empty interior and no endpoint interpolates")
    center = [float((l + h) / 2) for l, h in zip(lo_box, hi_box)]
    base = lows[0]
    base_vec = [expr_interval(c, enc).mid() for c in P.vector_of(base)]
    eps = width / (4 * P.dim)
    for _ in range(attempts):
        try:
            dw = density_witness(P, eps)
        except SearchExhausted:
            eps /= 2
            continue
        vecs = [[expr_interval(c, enc).mid() for c in P.vector_of(e)] for e in dw.elements]
        # solve sum_i m_i * vecs[i] = center - base for m
        rows = [[vecs[i][j] for i in range(P.dim)] for j in range(P.dim)]
        rhs = [center[j] - base_vec[j] for j in range(P.dim)]
        sol = _solve_numeric(rows, rhs)
        if sol is not None:
            z = dict(base)
            for m, e in zip(sol, dw.elements):
                z = coeff_add(z, e, round(m))
            if works(z):
                return z
        eps /= 2
    raise SearchExhausted(f"no interpolant found after {attempts} density refinements")


# ---------------------------------------------------------------------------
# builders

def _sym(x, default_name: str) -> SymbolicReal:
    if isinstance(x, SymbolicReal):
        return x
    if isinstance(x, str):
        return SymbolicReal(x)
    if x is None:
        return SymbolicReal(default_name)
    raise InvalidParams(f"expected a symbol, got {x!r}")


def build_group(tag: str, symbols: Sequence = (), **options) -> GroupPresentation:
    """Presentations of the four transcendental constructions.

    T1: ``Q (a^d, b^d)`` at even d and ``Z (a^d, b^d)`` at odd d.
    T3: ``Q (a^d, a^-d)`` even, ``Z (a^d, a^-d)`` odd, ``Z (cbrt2 a^d, 0)`` odd.
    T5: T3 with second coordinate ``a^d``.
    T6: ``Z (a^d, 0)`` for every d plus ``Z (0, 1)`` and ``Z (0, c)``.
    """
    symbols = list(symbols)
    if tag == "T1":
        if len(symbols) != 2:
            raise InvalidParams("T1 needs two symbols (alpha, beta)")
        a, b = _sym(symbols[0], "alpha"), _sym(symbols[1], "beta")
        if a.name == b.name:
            raise InvalidParams("T1 needs beta != alpha")
        if options.get("beta_relation") in ("alpha", "inv-alpha", "one"):
            raise InvalidParams(f"T1 excludes beta = {options['beta_relation']}")
        _reject_coincidences(a, b)
        pat = (Pattern.of(0, {a.name: 1}), Pattern.of(0, {b.name: 1}))
        rules = (
            BasisRule(0, "even", "Q", pat),
            BasisRule(0, "odd", "Z", pat),
        )
        assumptions = (
            f"{a.name} is transcendental",
            f"{b.name} is not 1, {a.name} or 1/{a.name}",
            f"monomials in {a.name}, {b.name} are linearly independent over Q",
        )
        return GroupPresentation(2, (a, b), rules, "T1", assumptions)
    if tag in ("T3", "T5"):
        if len(symbols) != 1:
            raise InvalidParams(f"{tag} needs one symbol (alpha)")
        a = _sym(symbols[0], "alpha")
        second = -1 if tag == "T3" else 1
        pat = (Pattern.of(0, {a.name: 1}), Pattern.of(0, {a.name: second}))
        rules = (
            BasisRule(0, "even", "Q", pat),
            BasisRule(0, "odd", "Z", pat),
            BasisRule(1, "odd", "Z", (Pattern.of(1, {a.name: 1}), None)),
        )
        assumptions = (
            f"{a.name} is transcendental",
            f"1, cbrt2, cbrt4 are linearly independent over Q({a.name})",
        )
        return GroupPresentation(2, (a,), rules, tag, assumptions)
    if tag == "T6":
        if len(symbols) != 2:
            raise InvalidParams("T6 needs two symbols (alpha, and an independent auxiliary)")
        a, c = _sym(symbols[0], "alpha"), _sym(symbols[1], "gamma")
        if a.name == c.name:
            raise InvalidParams("T6 needs an auxiliary symbol independent of alpha")
        rules = (
            BasisRule(0, "all", "Z", (Pattern.of(0, {a.name: 1}), None)),
            BasisRule(0, (0, 1), "Z", (None, Pattern.of(0, {c.name: 1})), family="aux"),
        )
        assumptions = (
            f"{a.name} is transcendental",
            f"{c.name} is transcendental and not algebraic over Q({a.name}) (declared, not checked)",
        )
        return GroupPresentation(2, (a, c), rules, "T6", assumptions)
    raise InvalidParams(f"unknown builder tag {tag!r}")


def _reject_coincidences(a: SymbolicReal, b: SymbolicReal):
    if a.approx is None or b.approx is None or a.radius or b.radius:
        return
    if b.approx in (1.0, a.approx, 1.0 / a.approx):
        raise InvalidParams("declared beta coincides with 1, alpha or 1/alpha")

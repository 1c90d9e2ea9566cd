"""Realization reports: the claimed invariance group ``{A^n}`` is checked from
both sides on a presentation.  Powers of the generator are proved invariant,
and every other monomial candidate in a bounded family is refuted with an
explicit member whose image leaves G."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import FamilyTooLarge, InclusionFailed, InvalidParams, UnsupportedBeta
from .exactnum import SymbolicReal
from .groups import (
    GroupPresentation,
    InvarianceResult,
    MonomialMatrix,
    build_group,
    check_invariance,
    replay_witness,
)
from .symbolic import Mono, Scalar

DEFAULT_HEIGHT = 10
DEFAULT_EXPO = 6
DEFAULT_NBOUND = 5
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class CandidateFamily:
    """Monomial matrices ``r_i * g_i**k`` (one shared shift k, |k| <= K) over
    positive rationals r_i of height at most H, optionally times cbrt2**j_i."""

    shape: str
    rational_height: int = DEFAULT_HEIGHT
    exponent_bound: int = DEFAULT_EXPO
    radical_parts: bool = False

    def __post_init__(self):
        if self.shape not in ("diagonal", "antidiagonal"):
            raise InvalidParams(f"unknown shape {self.shape!r}")
        if self.rational_height < 1 or self.exponent_bound < 1:
            raise InvalidParams("height and exponent bound must be at least 1")

    def size(self, dim: int) -> int:
        per = len(positive_rationals(self.rational_height)) * (3 if self.radical_parts else 1)
        return per ** dim * (2 * self.exponent_bound + 1)


def positive_rationals(H: int) -> List[Fraction]:
    return sorted({Fraction(p, q) for p in range(1, H + 1) for q in range(1, H + 1)})


def native_generators(P: GroupPresentation) -> Tuple[Mono, ...]:
    """The monomial each coordinate's slot family is built from."""
    names = P.symbol_names
    if P.tag == "T1":
        return (Mono(0, ((names[0], 1),)), Mono(0, ((names[1], 1),)))
    if P.tag == "T3":
        return (Mono(0, ((names[0], 1),)), Mono(0, ((names[0], -1),)))
    if P.tag == "T5":
        return (Mono(0, ((names[0], 1),)), Mono(0, ((names[0], 1),)))
    if P.tag == "T6":
        return (Mono(0, ((names[0], 1),)), Mono.one())
    gens = []
    for j in range(P.dim):
        mono = Mono.one()
        for rule in P.rules:
            pat = rule.coords[j]
            if pat is not None and pat.slope:
                mono = Mono(0, tuple(sorted(pat.slope)))
                break
        gens.append(mono)
    return tuple(gens)


def enumerate_candidates(F: CandidateFamily, gens: Sequence[Mono]) -> Iterator[MonomialMatrix]:
    """Deterministic order: shift k, then rational parts, then radicals."""
    rats = positive_rationals(F.rational_height)
    rads = (0, 1, 2) if F.radical_parts else (0,)
    dim = len(gens)
    for k in sorted(range(-F.exponent_bound, F.exponent_bound + 1), key=lambda v: (abs(v), v)):
        powers = [g.pow(k) for g in gens]
        for rs in itertools.product(rats, repeat=dim):
            for js in itertools.product(rads, repeat=dim):
                entries = []
                for (f, m), r, j in zip(powers, rs, js):
                    f2, m2 = m.mul(Mono(j))
                    entries.append(Scalar(r * f * f2, m2))
                yield MonomialMatrix(F.shape, tuple(entries))


def claimed_power(M: MonomialMatrix, gen: MonomialMatrix) -> Optional[int]:
    """n with ``M == gen**n``, or None."""
    if M.shape != "diagonal" or gen.shape != "diagonal":
        return None
    for e in gen.entries:
        if e.mono.exps:
            name, g = e.mono.exps[0]
            x = dict(M.entries[gen.entries.index(e)].mono.exps).get(name, 0)
            if x % g:
                return None
            n = x // g
            return n if gen.power(n) == M else None
    return 0 if M.is_identity() else None


@dataclass(frozen=True)
class InclusionProof:
    n: int
    matrix: MonomialMatrix
    window: int
    slots_checked: int

    def handle(self) -> dict:
        return {"n": self.n, "matrix": str(self.matrix), "window": self.window, "slots_checked": self.slots_checked}


def verify_inclusion(P: GroupPresentation, gen: MonomialMatrix, bound: int) -> List[InclusionProof]:
    proofs = []
    for n in range(-bound, bound + 1):
        M = gen.power(n)
        res = check_invariance(M, P)
        if not res.invariant:
            raise InclusionFailed(f"generator power {n} is not invariant: {res.reason}", power=n, witness=res.witness)
        proofs.append(InclusionProof(n, M, res.window, res.slots_checked))
    return proofs


@dataclass(frozen=True)
class Refutation:
    candidate: MonomialMatrix
    witness: dict
    direction: str
    reason: str


@dataclass(frozen=True)
class RefutationOutcome:
    family: CandidateFamily
    refutations: Tuple[Refutation, ...]
    counterexamples: Tuple[MonomialMatrix, ...]
    skipped: Tuple[MonomialMatrix, ...]

    @property
    def examined(self) -> int:
        return len(self.refutations) + len(self.counterexamples) + len(self.skipped)


def refute_candidates(P: GroupPresentation, gen: MonomialMatrix, F: CandidateFamily,
                      budget: int = DEFAULT_BUDGET, generators: Optional[Sequence[Mono]] = None) -> RefutationOutcome:
    """Refute every candidate of F outside ``{gen**n}``.

    Candidates found invariant are returned as counterexamples to the claim.
    """
    size = F.size(P.dim)
    if size > budget:
        raise FamilyTooLarge(f"{F.shape} family has {size} candidates, budget is {budget}")
    gens = tuple(generators) if generators is not None else native_generators(P)
    refs, counter, skipped = [], [], []
    for M in enumerate_candidates(F, gens):
        if claimed_power(M, gen) is not None:
            skipped.append(M)
            continue
        res = check_invariance(M, P)
        if res.invariant:
            counter.append(M)
        else:
            refs.append(Refutation(M, res.witness, res.direction, res.reason))
    return RefutationOutcome(F, tuple(refs), tuple(counter), tuple(skipped))


@dataclass
class FGroupReport:
    presentation_tag: str
    claimed_group: str
    generator: MonomialMatrix
    verified_inclusions: List[InclusionProof] = field(default_factory=list)
    outcomes: List[RefutationOutcome] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)
    substitutions: dict = field(default_factory=dict)

    @property
    def refutations(self) -> List[Refutation]:
        return [r for o in self.outcomes for r in o.refutations]

    @property
    def counterexamples(self) -> List[MonomialMatrix]:
        return [m for o in self.outcomes for m in o.counterexamples]

    @property
    def verdict(self) -> str:
        return "counterexample_found" if self.counterexamples else "consistent_with_claim"

    def summary_rows(self) -> List[Tuple[str, str]]:
        rows = [("presentation", self.presentation_tag), ("claimed", self.claimed_group),
                ("inclusions verified", str(len(self.verified_inclusions)))]
        for o in self.outcomes:
            f = o.family
            label = f"{f.shape} H={f.rational_height} K={f.exponent_bound}"
            rows.append((label, f"{len(o.refutations)} refuted, {len(o.skipped)} in claim, "
                                f"{len(o.counterexamples)} counterexamples"))
        rows.append(("verdict", self.verdict))
        return rows


REDUCTION_ASSUMPTION = ("an invariant matrix is monomial in the presentation's symbols "
                        "(the reduction to monomial candidates is assumed, not re-proved)")
BETA_CASES = ("indep", "alpha", "inv-alpha", "one")


def _half(sym: SymbolicReal, name: str) -> SymbolicReal:
    if sym.approx is None:
        return SymbolicReal(name)
    root = math.sqrt(sym.approx)
    # first-order propagation plus slack for the float square root
    radius = sym.radius / (2 * root) * 1.01 + 4e-16 * root
    return SymbolicReal(name, root, radius)


def realize_dispatch(alpha: SymbolicReal, beta, height: int = DEFAULT_HEIGHT, expo: int = DEFAULT_EXPO,
                     nbound: int = DEFAULT_NBOUND, budget: int = DEFAULT_BUDGET,
                     radical_parts: bool = False) -> Tuple[GroupPresentation, FGroupReport]:
    """Build the presentation realizing ``{diag(alpha**n, beta**n)}`` and check it.

    ``beta`` is "indep" (or a :class:`SymbolicReal` for an independent
    symbol), "alpha", "inv-alpha" or "one".
    """
    a = alpha.name
    indep_sym = None
    if isinstance(beta, SymbolicReal):
        indep_sym, beta = beta, "indep"
    if beta not in BETA_CASES:
        raise UnsupportedBeta(f"beta must be one of {', '.join(BETA_CASES)}; got {beta!r}")
    subs = {}
    if beta == "one":
        aux = SymbolicReal(f"{a}_aux")
        P = build_group("T6", [alpha, aux])
        gen = MonomialMatrix.diag(Scalar.of(1, **{a: 1}), 1)
        claimed = f"diag({a}^n, 1)"
    else:
        sig = _half(alpha, f"{a}_half")
        subs[sig.name] = f"{a}^(1/2)"
        s = sig.name
        if beta == "indep":
            b_sym = indep_sym or SymbolicReal("beta")
            if b_sym.name in (a, s):
                raise InvalidParams("independent beta needs its own name")
            tau = _half(b_sym, f"{b_sym.name}_half")
            subs[tau.name] = f"{b_sym.name}^(1/2)"
            P = build_group("T1", [sig, tau])
            gen = MonomialMatrix.diag(Scalar.of(1, **{s: 2}), Scalar.of(1, **{tau.name: 2}))
            claimed = f"diag({a}^n, {b_sym.name}^n)"
        elif beta == "inv-alpha":
            P = build_group("T3", [sig])
            gen = MonomialMatrix.diag(Scalar.of(1, **{s: 2}), Scalar.of(1, **{s: -2}))
            claimed = f"diag({a}^n, {a}^-n)"
        else:
            P = build_group("T5", [sig])
            gen = MonomialMatrix.diag(Scalar.of(1, **{s: 2}), Scalar.of(1, **{s: 2}))
            claimed = f"diag({a}^n, {a}^n)"
    report = FGroupReport(P.tag, claimed, gen, substitutions=subs)
    report.assumptions = list(P.assumptions) + [REDUCTION_ASSUMPTION]
    report.verified_inclusions = verify_inclusion(P, gen, nbound)
    for shape in ("diagonal", "antidiagonal"):
        F = CandidateFamily(shape, height, expo, radical_parts)
        report.outcomes.append(refute_candidates(P, gen, F, budget))
    return P, report


def check_report(report: FGroupReport, P: GroupPresentation) -> List[str]:
    """Consistency problems in a report (empty when sound)."""
    problems = []
    included = {str(p.matrix) for p in report.verified_inclusions}
    for r in report.refutations:
        if str(r.candidate) in included:
            problems.append(f"{r.candidate} is both included and refuted")
        res = InvarianceResult(False, r.witness, r.direction)
        if not replay_witness(res, r.candidate, P):
            problems.append(f"witness for {r.candidate} does not replay")
    return problems

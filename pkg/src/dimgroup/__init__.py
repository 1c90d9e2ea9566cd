"""Exact membership, invariance and certificate tools for additive subgroups
of R^n given by monomial basis rules."""
from .certificates import Certificate, certify, certify_laurent_unit, certify_monic, certify_rational_b
from .errors import DimGroupError
from .exactnum import (
    AlgebraicNumber,
    CubicExtElement,
    RatFunction,
    SymbolicReal,
    algnum_sign_refine,
    cubic_invert,
    cubic_norm,
    rational_arith,
)
from .fgroup import CandidateFamily, FGroupReport, realize_dispatch, refute_candidates, verify_inclusion
from .groups import (
    GroupElement,
    GroupPresentation,
    MonomialMatrix,
    apply_monomial,
    build_group,
    check_invariance,
    density_witness,
    is_member,
    riesz_interpolate,
    state_eval,
)
from .identities import BezoutResult, MonicLemmaResult, bezout_integerized, monic_lemma
from .laurent import LaurentPoly, eval_mod
from .numtheory import q_adic_certificate, solve_unit_power
from .poly import Poly
from .symbolic import Scalar
from .verify import verify_certificate

__version__ = "0.1.0"

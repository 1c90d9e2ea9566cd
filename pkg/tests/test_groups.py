import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimgroup.codec import dec_presentation, enc_presentation
from dimgroup.errors import (
    InexpressibleAction,
    InvalidInput,
    InvalidParams,
    NeedsRefinement,
    SearchExhausted,
    UnknownBasisMonomial,
)
from dimgroup.exactnum import SymbolicReal
from dimgroup.groups import (
    GroupElement,
    MonomialMatrix,
    apply_monomial,
    build_group,
    check_invariance,
    coeff_add,
    density_witness,
    is_member,
    is_positive,
    leq,
    membership,
    parse_pattern,
    replay_witness,
    riesz_interpolate,
    state_eval,
)
from dimgroup.symbolic import Mono, Scalar, expr_add, expr_const, expr_interval

ALPHA = SymbolicReal("alpha", 2.5, 1e-12)
BETA = SymbolicReal("beta", 0.3, 1e-12)
T1 = build_group("T1", [ALPHA, BETA])
T3 = build_group("T3", [ALPHA])
T5 = build_group("T5", [ALPHA])
T6 = build_group("T6", [ALPHA, SymbolicReal("gamma", 1.7, 1e-12)])
ALL = {"T1": T1, "T3": T3, "T5": T5, "T6": T6}


def k(d, r=0, fam="main"):
    return (r, d, fam)


def random_member(P, rng, span=4):
    out = {}
    for key in P.window_slots(span):
        ring = P.rule_for(key).ring
        if ring == "zero" or rng.random() < 0.5:
            continue
        c = Fraction(rng.randint(-9, 9))
        if ring == "Q":
            c /= rng.randint(1, 7)
        if c:
            out[key] = c
    return out


# -- membership -------------------------------------------------------------

def test_t1_membership_examples():
    assert is_member({k(0): Fraction(3, 2), k(1): 1}, T1)
    ok, why = membership({k(1): Fraction(1, 2)}, T1)
    assert not ok and "odd-degree coefficient not integral" in why


def test_t3_membership_examples():
    assert is_member({k(3, 1): 2}, T3)
    with pytest.raises(UnknownBasisMonomial):
        is_member({k(2, 1): 1}, T3)


def test_t6_unit_decomposition():
    assert T6.unit.coeffs == {k(0): 1, k(0, fam="aux"): 1}


@pytest.mark.parametrize("tag", sorted(ALL))
def test_unit_is_member_with_coordinates_one(tag):
    P = ALL[tag]
    assert is_member(P.unit, P)
    assert all(c == expr_const(1) for c in P.unit.vector())


def test_membership_of_coordinate_vector():
    alpha2 = {Mono(0, (("alpha", 2),)): Fraction(1)}
    beta2 = {Mono(0, (("beta", 2),)): Fraction(1)}
    assert is_member((alpha2, beta2), T1)
    # alpha^2 paired with beta^3 lies outside the span
    beta3 = {Mono(0, (("beta", 3),)): Fraction(1)}
    assert not is_member((alpha2, beta3), T1)


def test_group_element_rejects_non_member():
    with pytest.raises(InvalidInput):
        GroupElement(T1, {k(1): Fraction(1, 3)})


@pytest.mark.parametrize("tag", sorted(ALL))
def test_closure_under_sum_and_difference(tag):
    P = ALL[tag]
    rng = random.Random(7)
    for _ in range(100):
        g, h = random_member(P, rng), random_member(P, rng)
        assert is_member(g, P) and is_member(h, P)
        assert is_member(coeff_add(g, h), P)
        assert is_member(coeff_add(g, h, -1), P)
        x, y = GroupElement(P, g), GroupElement(P, h)
        assert (x + y) - y == x


def test_builder_validation():
    with pytest.raises(InvalidParams):
        build_group("T1", [ALPHA, SymbolicReal("alpha")])
    with pytest.raises(InvalidParams):
        build_group("T1", [ALPHA, BETA], beta_relation="inv-alpha")
    with pytest.raises(InvalidParams):
        build_group("T1", [SymbolicReal("a", 2.0, 0.0), SymbolicReal("b", 0.5, 0.0)])
    with pytest.raises(InvalidParams):
        build_group("T6", [ALPHA, SymbolicReal("alpha")])
    with pytest.raises(InvalidParams):
        build_group("T9", [ALPHA])


# -- action and invariance -----------------------------------------------------

def test_apply_monomial_examples():
    M = MonomialMatrix.diag(Scalar.of(1, alpha=2), Scalar.of(1, beta=2))
    img = apply_monomial(T1.unit, M, T1)
    coeffs, _ = T1.resolve(img)
    assert coeffs == {k(2): 1}
    assert T1.resolve(apply_monomial({k(3): 5}, MonomialMatrix.identity(2), T1))[0] == {k(3): 5}
    half = apply_monomial({k(0): Fraction(1, 2)}, MonomialMatrix.diag(Scalar.of(1, alpha=1), Scalar.of(1, beta=1)), T1)
    assert not is_member(half, T1)


def test_inexpressible_action():
    with pytest.raises(InexpressibleAction):
        check_invariance(MonomialMatrix.diag(Scalar.of(1, delta=1), 1), T1)


@pytest.mark.parametrize("n", range(-5, 6))
def test_t1_even_powers_invariant(n):
    M = MonomialMatrix.diag(Scalar.of(1, alpha=2), Scalar.of(1, beta=2)).power(n)
    assert check_invariance(M, T1).invariant


def test_t1_scaled_generator_refuted():
    M = MonomialMatrix.diag(Scalar.of(2, alpha=2), Scalar.of(1, beta=2))
    res = check_invariance(M, T1)
    assert not res.invariant and replay_witness(res, M, T1)


def test_t1_scaled_both_coordinates_refuted_by_ring():
    # 2*(alpha^2, beta^2) keeps the span but Z*2 != Z on odd slots
    M = MonomialMatrix.diag(Scalar.of(2, alpha=2), Scalar.of(2, beta=2))
    res = check_invariance(M, T1)
    assert not res.invariant and replay_witness(res, M, T1)
    assert res.direction == "inverse" and res.witness and all(d % 2 == 1 for _, d, _ in res.witness)


def test_t3_swap_refuted_on_radical_slot():
    M = MonomialMatrix.antidiag(1, 1)
    res = check_invariance(M, T3)
    assert not res.invariant
    assert list(res.witness) == [k(-1, 1)]
    assert replay_witness(res, M, T3)


def test_t3_claimed_generator_invariant():
    M = MonomialMatrix.diag(Scalar.of(1, alpha=2), Scalar.of(1, alpha=-2))
    for n in range(-5, 6):
        assert check_invariance(M.power(n), T3).invariant


def test_t6_generator_invariant():
    M = MonomialMatrix.diag(Scalar.of(1, alpha=1), 1)
    assert check_invariance(M, T6).invariant
    assert not check_invariance(MonomialMatrix.diag(1, 2), T6).invariant


CASES = [
    (T1, MonomialMatrix.diag(Scalar.of(1, alpha=2), Scalar.of(1, beta=2))),
    (T1, MonomialMatrix.diag(Scalar.of(3, alpha=1), Scalar.of(1, beta=1))),
    (T1, MonomialMatrix.antidiag(Scalar.of(1, beta=1), Scalar.of(1, alpha=1))),
    (T3, MonomialMatrix.diag(Scalar.of(1, alpha=4), Scalar.of(1, alpha=-4))),
    (T3, MonomialMatrix.diag(Scalar.of(1, alpha=1), Scalar.of(1, alpha=-1))),
    (T5, MonomialMatrix.diag(Scalar.of(1, alpha=2), Scalar.of(1, alpha=2))),
    (T5, MonomialMatrix.antidiag(1, 1)),
    (T6, MonomialMatrix.diag(Scalar.of(1, alpha=-3), 1)),
    (T6, MonomialMatrix.diag(Scalar.of(Fraction(1, 2), alpha=1), 1)),
]


@pytest.mark.parametrize("P,M", CASES)
def test_invariance_cross_checked_by_sampling(P, M):
    res = check_invariance(M, P)
    rng = random.Random(11)
    if res.invariant:
        for _ in range(100):
            g = random_member(P, rng)
            assert is_member(apply_monomial(g, M, P), P)
            assert is_member(apply_monomial(g, M.inverse(), P), P)
    else:
        assert replay_witness(res, M, P)


def test_matrix_algebra():
    A = MonomialMatrix.antidiag(Scalar.of(2, alpha=1), Scalar.of(3))
    assert (A @ A.inverse()).is_identity()
    assert A.power(0).is_identity()
    assert A.power(2) == A @ A
    assert A.power(-2) == A.inverse().power(2)


# -- states and order -----------------------------------------------------------

def test_state_examples():
    assert state_eval(1, T1.unit, T1).rational() == 1
    assert state_eval(2, {k(2): 1}, T1).expr == {Mono(0, (("beta", 2),)): 1}
    assert state_eval(1, {}, T1).rational() == 0
    with pytest.raises(InvalidInput):
        state_eval(3, T1.unit, T1)


@pytest.mark.parametrize("tag", sorted(ALL))
def test_state_additive(tag):
    P = ALL[tag]
    rng = random.Random(3)
    for _ in range(50):
        g, h = random_member(P, rng), random_member(P, rng)
        for j in range(1, P.dim + 1):
            lhs = state_eval(j, coeff_add(g, h), P).expr
            rhs = expr_add(state_eval(j, g, P).expr, state_eval(j, h, P).expr)
            assert lhs == rhs


def test_positive_cone():
    assert is_positive({}, T1)
    assert is_positive(T1.unit.coeffs, T1)
    # alpha - 3 < 0 in the first coordinate
    assert not is_positive({k(1): 1, k(0): -3}, T1)
    assert leq({}, T1.unit.coeffs, T1)


def test_sign_needs_refinement_without_enclosures():
    P = build_group("T1", ["a", "b"])
    with pytest.raises((NeedsRefinement, InvalidInput)):
        is_positive({k(1): 1, k(0): -3}, P)


# -- density ------------------------------------------------------------------

@pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10**4)])
def test_density_witness_certified(eps):
    dw = density_witness(T1, eps)
    enc = T1.enclosures()
    assert len(dw.elements) == 2 and all(b < eps for b in dw.norm_bounds)
    for el in dw.elements:
        assert is_member(el, T1)
        # re-derive each norm bound from the coordinate enclosures
        sq = sum(expr_interval(c, enc).square().hi for c in T1.vector_of(el))
        assert sq < eps * eps
    assert expr_interval(dw.determinant, enc).sign() != 0


def test_density_reports_denominator_bound():
    with pytest.raises(SearchExhausted, match="65536"):
        density_witness(T1, Fraction(1, 10**6))
    assert len(density_witness(T1, Fraction(1, 10**6), max_den=1 << 24).elements) == 2


def test_density_huge_eps():
    dw = density_witness(T1, 10**6)
    assert len(dw.elements) == 2


def _lattice_line():
    return dec_presentation({
        "tag": "custom", "symbols": [{"kind": "symbol", "name": "alpha", "approx": 2.5, "radius": 1e-12}],
        "basis_rules": [{"radical": 0, "degrees": [0], "ring": "Z", "coords": ["1", "1"]},
                        {"radical": 0, "degrees": [1], "ring": "Q", "coords": ["alpha^d", "0"], "family": "x"}]})


def test_density_exhausts_with_one_short_direction():
    with pytest.raises(SearchExhausted, match="1 of 2"):
        density_witness(_lattice_line(), Fraction(1, 10))


def test_density_t6_uses_parallel_pairs():
    dw = density_witness(T6, Fraction(1, 100))
    assert all(set(fam for _, _, fam in el) for el in dw.elements)
    assert all(b < Fraction(1, 100) for b in dw.norm_bounds)


def test_density_needs_numerics():
    with pytest.raises(InvalidInput):
        density_witness(build_group("T1", ["a", "b"]), Fraction(1, 10))


# -- riesz ------------------------------------------------------------------------

def test_riesz_degenerate_box():
    g = {k(1): 2, k(0): 1}
    assert riesz_interpolate(T1, g, g, g, g) == g


def test_riesz_zero_to_unit_gives_half_unit():
    assert riesz_interpolate(T1, {}, {}, T1.unit, T1.unit) == {k(0): Fraction(1, 2)}


def test_riesz_rejects_bad_order():
    with pytest.raises(InvalidInput):
        riesz_interpolate(T1, T1.unit, {}, {}, {})


def test_riesz_mixed_lower_bounds():
    g2 = {k(0): Fraction(1, 2)}
    h = T1.unit.coeffs
    g1 = {k(-2): Fraction(1, 100)}
    z = riesz_interpolate(T1, g1, g2, h, h)
    for g in (g1, g2):
        assert leq(g, z, T1) and leq(z, h, T1)


def test_riesz_exhausts_without_room():
    # second coordinate is integral, so nothing fits strictly between 0 and 1
    P = _lattice_line()
    x = {(0, 1, "x"): Fraction(1, 10)}
    g1, g2 = x, coeff_add({}, x, -1)
    h1, h2 = coeff_add(P.unit.coeffs, x), coeff_add(P.unit.coeffs, x, -1)
    with pytest.raises(SearchExhausted):
        riesz_interpolate(P, g1, g2, h1, h2)


def test_riesz_random_boxes():
    rng = random.Random(5)
    done = 0
    while done < 20:
        a, b = random_member(T1, rng, 2), random_member(T1, rng, 2)
        lo, hi = (a, b) if leq(a, b, T1) else (b, a) if leq(b, a, T1) else (None, None)
        if lo is None or lo == hi:
            continue
        z = riesz_interpolate(T1, lo, lo, hi, hi)
        assert is_member(z, T1) and leq(lo, z, T1) and leq(z, hi, T1)
        done += 1


# -- custom presentations and JSON ------------------------------------------------

def test_parse_pattern_forms():
    assert str(parse_pattern("alpha^d")) == "alpha^d"
    assert parse_pattern("0") is None
    p = parse_pattern("cbrt2*alpha^(2d+1)")
    assert p.at(1) == Mono(1, (("alpha", 3),))


@pytest.mark.parametrize("tag", sorted(ALL))
def test_builder_json_round_trip(tag):
    P = ALL[tag]
    Q = dec_presentation(enc_presentation(P))
    assert Q.rules == P.rules and Q.tag == P.tag


def test_custom_presentation_matches_t1():
    d = {"tag": "custom", "symbols": [{"kind": "symbol", "name": "alpha"}, {"kind": "symbol", "name": "beta"}],
         "basis_rules": [
             {"radical": 0, "degree_parity": "even", "ring": "Q", "coords": ["alpha^d", "beta^d"]},
             {"radical": 0, "degree_parity": "odd", "ring": "Z", "coords": ["alpha^d", "beta^d"]}]}
    P = dec_presentation(d)
    assert P.rules == T1.rules
    assert dec_presentation(enc_presentation(P)).rules == P.rules
    assert not is_member({k(1): Fraction(1, 2)}, P)


def test_custom_presentation_rejects_missing_unit():
    d = {"tag": "custom", "symbols": [{"kind": "symbol", "name": "alpha"}],
         "basis_rules": [{"radical": 0, "degree_parity": "odd", "ring": "Z", "coords": ["alpha^d", "alpha^d"]}]}
    with pytest.raises(InvalidParams):
        dec_presentation(d)


@given(st.integers(-6, 6), st.integers(-6, 6), st.fractions(min_value=-5, max_value=5, max_denominator=5))
def test_membership_matches_ring_rule(d1, d2, c):
    # T1 ring rule: Q at even degrees, Z at odd ones
    expect = c.denominator == 1 or d1 % 2 == 0
    assert is_member({k(d1): c}, T1) == expect
    if d2 != d1:
        assert is_member({k(d1): c, k(d2): 0}, T1) == expect

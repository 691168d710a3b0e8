import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symarw.arw import (
    BranchCapError,
    CoordinateSequence,
    InnerStep,
    MixtureState,
    OuterStep,
    PlethStep,
    PureInnerState,
    WeightedPlethStep,
    audit_rng,
    evolve_schur,
    extended_square_terms,
    fastpath_vs_ring_check,
    inner_step,
    measure,
    outer_step,
    pleth_step_right,
    pleth_step_right_weighted,
    positivity_audit,
    pure_inner_positivity,
    pure_inner_step,
    random_symfunc,
    ring_step,
    s_alpha_poly,
    state_series,
    sum_of_squares,
)
from symarw.partitions import partitions_of, partitions_up_to
from symarw.symfunc import (
    SeriesSpec,
    SymFunc,
    counit,
    expand_series,
    hall_inner,
    inner_product_op,
    one,
    outer_product,
    perp,
    plethysm,
    power_sum,
    schur,
)

from oracles import schur_poly

F = Fraction


def rand_coords(rng, n, lo=-3, hi=3):
    return [F(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(n)]


def rand_f(rng, max_degree, cap):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        lam = rng.choice(partitions_up_to(max_degree, cap))
        terms[lam] = F(rng.randint(-5, 5), rng.randint(1, 3))
    return SymFunc(terms, "s", cap)


# --- coordinates and construction -----------------------------------------

def test_coordinate_sequence():
    c = CoordinateSequence.of([1, F(1, 2)], 4)
    assert c[1] == 1 and c[2] == F(1, 2) and c[4] == 0
    assert c.occupied() == 2
    assert (c + c)[2] == 1
    assert CoordinateSequence.of({3: 2}, 4)[3] == 2
    with pytest.raises(IndexError):
        c[0]
    with pytest.raises(TypeError):
        CoordinateSequence.of([0.5], 4)


def test_state_validation():
    with pytest.raises(ValueError):
        MixtureState.mixture([(F(1, 2), [1])], 4)
    with pytest.raises(ValueError):
        MixtureState.mixture([(F(3, 2), [1]), (F(-1, 2), [0])], 4)
    with pytest.raises(ValueError):
        OuterStep.of([(F(1, 3), [1])], 4)
    with pytest.raises(ValueError):
        PlethStep(0)
    with pytest.raises(ValueError):
        pleth_step_right(MixtureState.group_like([1], 4), 0)


# --- outer steps -----------------------------------------------------------

def test_outer_step_examples():
    cap = 6
    c, phi = [1, 2], [F(1, 2), 0, 3]
    state = outer_step(MixtureState.group_like(c, cap), OuterStep.of([(1, phi)], cap))
    assert len(state.branches) == 1
    assert state.branches[0].c == CoordinateSequence.of([F(3, 2), 2, 3], cap)

    start = MixtureState.group_like(c, cap)
    assert outer_step(start, OuterStep.of([(1, [])], cap)) == start

    c2, phi2 = [0, 1], [5]
    mix = MixtureState.mixture([(F(1, 2), c), (F(1, 2), c2)], cap)
    step = OuterStep.of([(F(1, 2), phi), (F(1, 2), phi2)], cap)
    out = outer_step(mix, step)
    assert sorted(b.weight for b in out.branches) == [F(1, 4)] * 4
    seen = {b.c.values for b in out.branches}
    for a in (c, c2):
        for b in (phi, phi2):
            assert (CoordinateSequence.of(a, cap) + CoordinateSequence.of(b, cap)).values in seen


def test_identical_branches_merge():
    cap = 4
    step = OuterStep.of([(F(1, 2), [1]), (F(1, 2), [1])], cap)
    out = outer_step(MixtureState.group_like([0], cap), step)
    assert len(out.branches) == 1 and out.branches[0].weight == 1


def test_branch_cap_aborts():
    cap = 4
    step = OuterStep.of([(F(1, 2), [1]), (F(1, 2), [0, 1])], cap)
    state = MixtureState.group_like([], cap)
    state = outer_step(state, step, branch_cap=4)
    state = outer_step(state, step, branch_cap=4)  # 3 distinct sums
    with pytest.raises(BranchCapError):
        for _ in range(3):
            state = outer_step(state, step, branch_cap=4)


def test_outer_shift_theorem_two_ways():
    rng = random.Random(8)
    cap = 6
    for _ in range(20):
        c, phi = rand_coords(rng, cap), rand_coords(rng, cap)
        f = rand_f(rng, 6, cap)
        state = outer_step(MixtureState.group_like(c, cap), OuterStep.of([(1, phi)], cap))
        shifted = [a + b for a, b in zip(c, phi)]
        expected = sum((coef * s_alpha_poly(alpha, shifted) for alpha, coef in f.terms.items()), F(0))
        assert measure(state, f) == expected
        ring = outer_product(expand_series(SeriesSpec("M_c", c=c, degree_cap=cap)),
                             expand_series(SeriesSpec("M_c", c=phi, degree_cap=cap)))
        assert hall_inner(ring, f) == expected
        assert measure(state, one(cap)) == 1


def test_skew_route_agrees_with_multiplication_route():
    # phi(X) M(XU) = phi(U)-perp M(XU): measuring a shifted state equals
    # measuring the skewed observable on the unshifted one
    rng = random.Random(4)
    cap = 5
    c, phi = rand_coords(rng, cap), rand_coords(rng, cap)
    mphi = expand_series(SeriesSpec("M_c", c=phi, degree_cap=cap))
    state = MixtureState.group_like(c, cap)
    shifted = outer_step(state, OuterStep.of([(1, phi)], cap))
    for lam in partitions_up_to(cap, cap):
        f = schur(lam, cap)
        assert measure(shifted, f) == measure(state, perp(mphi, f))


# --- inner steps -----------------------------------------------------------

def test_inner_step_examples():
    cap = 6
    c, psi = [1, 2, 3], [2, F(1, 2), 0, 7]
    start = MixtureState.group_like(c, cap)
    assert inner_step(start, InnerStep.of([(1, [1] * cap)], cap)) == start
    out = inner_step(start, InnerStep.of([(1, psi)], cap))
    assert out.branches[0].c == CoordinateSequence.of([2, 1, 0], cap)
    zero = inner_step(start, InnerStep.of([(1, [])], cap))
    assert zero.branches[0].c.occupied() == 0
    assert state_series(zero) == one(cap)


def test_inner_dilation_theorem_two_ways():
    rng = random.Random(9)
    cap = 6
    for _ in range(20):
        c, psi = rand_coords(rng, cap), rand_coords(rng, cap)
        f = rand_f(rng, 6, cap)
        state = MixtureState.group_like(c, cap)
        step = InnerStep.of([(1, psi)], cap)
        dilated = [a * b for a, b in zip(c, psi)]
        expected = sum((coef * s_alpha_poly(alpha, dilated) for alpha, coef in f.terms.items()), F(0))
        assert measure(inner_step(state, step), f) == expected
        assert hall_inner(ring_step(state, step), f) == expected


def test_combined_orders_are_reproduced_faithfully():
    cap = 5
    c, phi, psi = [1, 2], [3, 0, 1], [2, 5, F(1, 2)]
    state = MixtureState.group_like(c, cap)
    outer = OuterStep.of([(1, phi)], cap)
    inner = InnerStep.of([(1, psi)], cap)
    a = inner_step(outer_step(state, outer), inner)  # psi (c + phi)
    b = outer_step(inner_step(state, inner), outer)  # (psi c) + phi
    cs, ps, qs = (CoordinateSequence.of(x, cap) for x in (c, phi, psi))
    assert a.branches[0].c == qs * (cs + ps)
    assert b.branches[0].c == qs * cs + ps
    assert a.branches[0].c != b.branches[0].c


def test_outer_steps_compose_by_adding():
    cap = 5
    rng = random.Random(3)
    c, phi, chi = (rand_coords(rng, cap) for _ in range(3))
    state = MixtureState.group_like(c, cap)
    one_by_one = outer_step(outer_step(state, OuterStep.of([(1, phi)], cap)),
                            OuterStep.of([(1, chi)], cap))
    merged = outer_step(state, OuterStep.of([(1, [a + b for a, b in zip(phi, chi)])], cap))
    assert one_by_one == merged
    swapped = outer_step(outer_step(state, OuterStep.of([(1, chi)], cap)),
                         OuterStep.of([(1, phi)], cap))
    assert swapped == one_by_one


def test_extended_state_rejects_inner_and_pleth():
    state = MixtureState.extended([1], [0, 1], 4)
    with pytest.raises(ValueError):
        inner_step(state, InnerStep.of([(1, [1])], 4))
    with pytest.raises(ValueError):
        pleth_step_right(state, 2)


def test_extended_state_outer_step_is_exact():
    cap = 6
    c, d, phi = [1, F(1, 2)], [0, F(1, 3), 1], [F(-1, 2), 2]
    state = MixtureState.extended(c, d, cap)
    moved = outer_step(state, OuterStep.of([(1, phi)], cap))
    ring = outer_product(state_series(state), expand_series(SeriesSpec("M_c", c=phi, degree_cap=cap)))
    for lam in partitions_up_to(cap, cap):
        assert measure(moved, schur(lam, cap)) == hall_inner(ring, schur(lam, cap))


# --- plethystic steps ------------------------------------------------------

def test_pleth_step_examples():
    cap = 6
    c = [F(1, 2), 3, -1]
    state = MixtureState.group_like(c, cap)
    assert pleth_step_right(state, 1) == state
    out = pleth_step_right(state, 2)
    assert out.branches[0].c == CoordinateSequence.of([0, 1, 0, 6, 0, -2], cap)
    assert not out.truncated
    out3 = pleth_step_right(MixtureState.group_like([1], cap), 3)
    assert out3.branches[0].c == CoordinateSequence.of([0, 0, 3], cap)


def test_pleth_step_truncation_flag():
    cap = 6
    out = pleth_step_right(MixtureState.group_like([1, 1, 1, 1], cap), 2)
    assert out.truncated
    assert out.branches[0].c == CoordinateSequence.of([0, 2, 0, 2, 0, 2], cap)
    # dropped coordinates never reach observables of degree <= cap
    ring = plethysm(state_series(MixtureState.group_like([1, 1, 1, 1], cap)), power_sum([2], cap))
    for lam in partitions_up_to(cap, cap):
        assert measure(out, power_sum(lam, cap)) == hall_inner(ring, power_sum(lam, cap))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_inflation_matches_ring_plethysm(m):
    rng = random.Random(m)
    cap = 12
    c = rand_coords(rng, cap)
    state = MixtureState.group_like(c, cap)
    ring = plethysm(expand_series(SeriesSpec("M_c", c=c, degree_cap=cap)), power_sum([m], cap))
    fast = pleth_step_right(state, m)
    assert state_series(fast) == ring


def test_weighted_pleth_step():
    cap = 6
    c = [F(2, 3), 1]
    state = MixtureState.group_like(c, cap)
    single = pleth_step_right_weighted(state, [(1, 2)])
    assert single == state_series(pleth_step_right(state, 2))
    both = pleth_step_right_weighted(state, [(F(1, 2), 1), (F(1, 2), 2)])
    # exponent term for n = 1 is (1/4) c_1 p_(2,1)
    assert both.coefficient((2, 1)) == F(1, 4) * c[0]
    assert pleth_step_right_weighted(state, [(0, 1), (0, 3)]) == one(cap)
    assert isinstance(both, SymFunc)
    assert measure(both, one(cap)) == 1


def test_fastpath_checks():
    rng = random.Random(12)
    cap = 6
    c = rand_coords(rng, cap)
    phi, psi = rand_coords(rng, cap), rand_coords(rng, cap)
    mix = MixtureState.mixture([(F(1, 3), c), (F(2, 3), rand_coords(rng, cap))], cap)
    assert fastpath_vs_ring_check(mix, OuterStep.of([(F(1, 4), phi), (F(3, 4), psi)], cap))
    assert fastpath_vs_ring_check(mix, InnerStep.of([(1, [1] * cap)], cap))
    assert fastpath_vs_ring_check(mix, InnerStep.of([(F(1, 2), phi), (F(1, 2), psi)], cap))
    assert fastpath_vs_ring_check(mix, PlethStep(2), [power_sum([4], cap), schur([2, 2], cap)])
    assert fastpath_vs_ring_check(mix, PlethStep(3))
    assert fastpath_vs_ring_check(mix, WeightedPlethStep(((F(1, 2), 2),)))
    with pytest.raises(ValueError):
        ring_step(mix, WeightedPlethStep(((1, 1), (1, 2))))


def test_weighted_multi_part_differs_from_ring_plethysm():
    # the product rule p_n[w1 p_m1 + w2 p_m2] -> w1 w2 p_{n m1, n m2} is not ring plethysm
    cap = 6
    state = MixtureState.group_like([1], cap)
    rule = pleth_step_right_weighted(state, [(F(1, 2), 1), (F(1, 2), 2)])
    ring = plethysm(state_series(state), power_sum([1], cap) * F(1, 2) + power_sum([2], cap) * F(1, 2))
    assert rule != ring


# --- measurement -----------------------------------------------------------

def test_measure_examples():
    cap = 6
    c = [F(3, 2), F(-1, 3), 2]
    state = MixtureState.group_like(c, cap)
    assert measure(state, one(cap)) == 1
    assert measure(state, schur([1], cap)) == c[0]
    assert measure(state, schur([2], cap)) == (c[0] ** 2 + c[1]) / 2
    assert s_alpha_poly((), c) == 1
    assert s_alpha_poly((1, 1), c) == (c[0] ** 2 - c[1]) / 2
    with pytest.raises(Exception):
        measure(state, SymFunc({(7,): 1}, "p", 7))


def test_s_alpha_is_schur_polynomial_on_an_alphabet():
    xs = [F(1, 2), F(-2), F(3)]
    c = [sum(x ** n for x in xs) for n in range(1, 7)]
    for lam in partitions_up_to(6, 6):
        assert s_alpha_poly(lam, c) == schur_poly(lam, xs)


def test_measure_is_multiplicative_on_group_like():
    rng = random.Random(5)
    cap = 6
    state = MixtureState.group_like(rand_coords(rng, cap), cap)
    for _ in range(5):
        f, g = rand_f(rng, 3, cap), rand_f(rng, 3, cap)
        assert measure(state, f * g) == measure(state, f) * measure(state, g)


def test_evolve_schur():
    cap = 6
    assert evolve_schur([2, 1], [OuterStep.of([(1, [])], cap)], cap) == [(1, schur([2, 1], cap))]
    (prob, g), = evolve_schur([1], [OuterStep.of([(1, [3])], cap)], cap)
    assert prob == 1 and g == schur([1], cap) + 3
    phi = [F(1, 2), -1, 2]
    for lam in ([2, 1], [3], [2, 2]):
        out = evolve_schur(lam, [OuterStep.of([(1, phi)], cap)], cap)
        assert counit(out[0][1]) == s_alpha_poly(lam, CoordinateSequence.of(phi, cap))


def test_evolve_schur_is_the_dual_action():
    # <M_c | T f> = <M_{c+phi} | f>
    cap = 5
    rng = random.Random(1)
    c, phi = rand_coords(rng, cap), rand_coords(rng, cap)
    state = MixtureState.group_like(c, cap)
    step = OuterStep.of([(F(1, 3), phi), (F(2, 3), c)], cap)
    for lam in ([2, 1], [1, 1, 1], [3, 2]):
        paths = evolve_schur(lam, [step], cap)
        lhs = sum((p * measure(state, g) for p, g in paths), F(0))
        assert lhs == measure(outer_step(state, step), schur(lam, cap))


# --- pure inner walks ------------------------------------------------------

def test_pure_inner_examples():
    rho = PureInnerState.of({(2,): 1}, 6)
    new, total = pure_inner_step(rho, {(2,): 1})
    assert new.r == {(2,): 2} and total == 2
    base = PureInnerState.of({(2, 1): F(1, 2), (1, 1, 1): F(1, 2)}, 6)
    from symarw.partitions import z_of
    same, total = pure_inner_step(base, {lam: F(1, z_of(lam)) for lam in partitions_up_to(6, 6)})
    assert same == base and total == 1


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(0, 6).flatmap(lambda n: st.sampled_from(partitions_of(n))),
                       st.fractions(0, 3, max_denominator=4), max_size=5),
       st.dictionaries(st.integers(0, 6).flatmap(lambda n: st.sampled_from(partitions_of(n))),
                       st.fractions(0, 3, max_denominator=4), max_size=5))
def test_pure_inner_positivity_preserved(r, psi):
    new, _ = pure_inner_step(PureInnerState.of(r, 6), psi)
    assert all(v > 0 for v in new.r.values())


def test_pure_inner_step_formula_and_positivity_identity():
    rng = random.Random(21)
    cap = 6
    for _ in range(10):
        r = {lam: F(rng.randint(0, 4), rng.randint(1, 3)) for lam in rng.sample(partitions_up_to(cap, cap), 6)}
        psi = {lam: F(rng.randint(-3, 3), rng.randint(1, 3)) for lam in rng.sample(partitions_up_to(cap, cap), 8)}
        rho = PureInnerState.of(r, cap)
        new, _ = pure_inner_step(rho, psi)
        ring = inner_product_op(SymFunc(psi, "p", cap), rho.series())
        assert new.series() == ring
        f = rand_f(rng, cap, cap)
        lhs = hall_inner(rho.series(), inner_product_op(f, f))
        assert lhs == pure_inner_positivity(rho, f)
        assert lhs >= 0


# --- audits ----------------------------------------------------------------

def test_audit_rng_is_deterministic_and_independent():
    a = audit_rng(3, 1).integers(0, 10 ** 9, 5)
    b = audit_rng(3, 1).integers(0, 10 ** 9, 5)
    c = audit_rng(3, 2).integers(0, 10 ** 9, 5)
    assert (a == b).all() and not (a == c).all()
    f = random_symfunc(np.random.default_rng(0), 3, 6)
    assert f.degree <= 3


def test_positivity_audit_group_like():
    rng = random.Random(2)
    cap = 6
    state = MixtureState.mixture([(F(1, 2), rand_coords(rng, cap)), (F(1, 2), rand_coords(rng, cap))], cap)
    report = positivity_audit(state, 20, seed=5)
    assert report.ok and report.trials == 20
    assert report.min_value >= 0
    single = MixtureState.group_like(rand_coords(rng, cap), cap)
    f = rand_f(rng, 3, cap)
    assert measure(single, f * f) == measure(single, f) ** 2
    assert measure(single, SymFunc({}, "s", cap) * SymFunc({}, "s", cap)) == 0


def test_positivity_audit_finds_a_violation():
    # a non-convex "state": the raw series 1 - p_2/2 + ... is not positive
    cap = 4
    bad = SymFunc({(): 1, (1, 1): -5}, "p", cap)
    report = positivity_audit(bad, 30, seed=1, max_degree=1)
    assert not report.ok
    f, value = report.violations[0]
    assert value < 0 and hall_inner(bad, f * f) == value


def test_extended_state_sum_of_squares():
    rng = random.Random(17)
    cap = 8
    for _ in range(3):
        c, d = rand_coords(rng, cap), rand_coords(rng, cap)
        f = rand_f(rng, 4, cap)
        state = MixtureState.extended(c, d, cap)
        terms = extended_square_terms(c, d, f, cap)
        assert sum_of_squares(terms) == (measure(state, f * f), 0)


def test_extended_state_audit():
    rng = random.Random(23)
    cap = 12
    state = MixtureState.extended(rand_coords(rng, cap), rand_coords(rng, cap), cap)
    assert positivity_audit(state, 10, seed=9, max_degree=6).ok


def test_audit_rejects_truncated_squares():
    with pytest.raises(ValueError):
        positivity_audit(MixtureState.group_like([1], 6), 1, seed=0, max_degree=4)

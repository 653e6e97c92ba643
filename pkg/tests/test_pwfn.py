"""Tests for the piecewise-monotone function calculus."""

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtlab import pwfn
from dtlab.errors import DomainError, NotInvertibleError
from dtlab.lab import gen_distortion, gen_utility
from dtlab.pwfn import (
    NEG_INF,
    POS_INF,
    Breakpoint,
    PiecewiseMonotone,
    bp,
    classify,
    compose,
    right_inverse,
    strict_inverse,
)


def grid(lo, hi, den):
    return [Q(n, den) for n in range(lo * den, hi * den + 1)]


JUMP_AT_HALF = pwfn.on_reals([Breakpoint(Q(1, 2), Q(1, 2), Q(1, 2), Q(3, 2))], 1, 1)


# -- construction and canonical form ----------------------------------------


def test_redundant_interior_point_is_dropped():
    with_extra = pwfn.bounded([bp(0, 0), bp(Q(1, 2), Q(1, 2)), bp(1, 1)])
    assert with_extra == pwfn.identity(0, 1)
    assert len(with_extra.breakpoints) == 2


def test_affine_on_reals_reanchors_at_zero():
    f = pwfn.on_reals([bp(5, 13)], 2, 2)  # 2x + 3 anchored at x=5
    assert f == pwfn.affine(2, 3)
    assert f.breakpoints[0].x == 0


def test_canonicalization_is_idempotent():
    f = pwfn.step_open(Q(1, 3))
    again = PiecewiseMonotone(f.breakpoints, f.tails)
    assert again == f


def test_invalid_constructions_raise():
    with pytest.raises(ValueError):
        pwfn.bounded([bp(0, 1), bp(1, 0)])  # decreasing
    with pytest.raises(ValueError):
        pwfn.bounded([bp(0, 0)])  # single point bounded domain
    with pytest.raises(ValueError):
        PiecewiseMonotone((Breakpoint(Q(0), Q(1), Q(0), Q(0)),), (Q(1), Q(1)))
    with pytest.raises(ValueError):
        pwfn.on_reals([bp(0, 0)], -1, 1)  # negative tail slope


def test_flat_tail_encodes_clamped_function():
    relu = pwfn.on_reals([bp(0, 0)], 0, 1)
    assert relu(-5) == 0
    assert relu(3) == 3


# -- eval3 --------------------------------------------------------------------


def test_eval3_identity_interior():
    f = pwfn.identity(0, 1)
    assert f.eval3(Q(1, 2)) == (Q(1, 2), Q(1, 2), Q(1, 2))


def test_eval3_step_at_jump():
    f = pwfn.step_open(Q(1, 2))
    assert f.eval3(Q(1, 2)) == (0, 0, 1)


def test_eval3_reads_stored_triple():
    f = pwfn.on_reals([Breakpoint(Q(0), Q(0), Q(1, 4), Q(1, 2))], 0, 0)
    assert f.eval3(0) == (0, Q(1, 4), Q(1, 2))


def test_eval3_outside_bounded_domain_raises():
    f = pwfn.identity(0, 1)
    with pytest.raises(DomainError):
        f.eval3(2)
    with pytest.raises(DomainError):
        f.eval3(Q(-1, 10))


def test_eval3_endpoint_limits_fall_back_to_value():
    f = pwfn.step_open(Q(1, 2))
    assert f.eval3(0) == (0, 0, 0)
    assert f.eval3(1) == (1, 1, 1)


def test_eval3_one_sided_consistency_across_points():
    f = JUMP_AT_HALF
    xs = grid(-2, 2, 8)
    for a, b in zip(xs, xs[1:]):
        assert f.eval3(a)[2] <= f.eval3(b)[0]


# -- right_inverse --------------------------------------------------------------


def test_right_inverse_identity():
    assert right_inverse(pwfn.identity(), 3) == 3


def test_right_inverse_at_jump_matches_grid_oracle():
    # oracle: largest grid point y with f(y) <= 1
    f = JUMP_AT_HALF
    candidates = [y for y in grid(-2, 3, 32) if f(y) <= 1]
    assert max(candidates) == Q(1, 2)
    assert right_inverse(f, 1) == Q(1, 2)


def test_right_inverse_empty_sublevel_set():
    f = pwfn.bounded([bp(0, 0), bp(1, 0)])
    assert right_inverse(f, -1) is NEG_INF


def test_right_inverse_unbounded_above():
    f = pwfn.on_reals([bp(0, 0)], 1, 0)  # constant 0 above 0
    assert right_inverse(f, 0) is POS_INF
    assert right_inverse(f, -2) == -2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(-12, 12))
def test_right_inverse_galois_property(seed, num):
    f = gen_utility(seed, "uf-left").fn
    x = Q(num, 4)
    s = right_inverse(f, x)
    for y in grid(-5, 5, 4):
        if s is NEG_INF:
            assert f(y) > x
        elif s is POS_INF:
            assert f(y) <= x
        else:
            assert (f(y) <= x) == (y <= s)


# -- compose ----------------------------------------------------------------------


def test_compose_identity_laws():
    g = pwfn.step_open(Q(1, 2))
    assert compose(pwfn.identity(0, 1), g) == g
    assert compose(g, pwfn.identity(0, 1)) == g
    u = JUMP_AT_HALF
    assert compose(pwfn.identity(), u) == u
    assert compose(u, pwfn.identity()) == u


def test_compose_scaling_through_identity():
    f = pwfn.from_points([(0, 0), (1, 2)])
    assert compose(f, pwfn.identity(0, 1)) == f


def test_compose_step_with_identity_has_one_sided_jump():
    c = compose(pwfn.step_open(Q(1, 2)), pwfn.identity(0, 1))
    assert c.eval3(Q(1, 2)) == (0, 0, 1)
    # oracle: pointwise evaluation of f(g(x)) on a dense rational grid
    f, g = pwfn.step_open(Q(1, 2)), pwfn.identity(0, 1)
    for x in grid(0, 1, 16):
        assert c(x) == f(g(x))


def test_compose_jump_onto_jump_uses_one_sided_semantics():
    # outer jumps exactly where the inner jumps to
    outer = pwfn.on_reals([Breakpoint(Q(3, 2), Q(0), Q(0), Q(1))], 0, 0)
    c = compose(outer, JUMP_AT_HALF)
    # above 1/2 the inner exceeds 3/2 strictly, so the outer right limit applies
    assert c.eval3(Q(1, 2)) == (0, 0, 1)


def test_compose_with_flat_inner_takes_point_values():
    outer = pwfn.step_open(Q(1, 2))
    inner = pwfn.bounded([bp(0, Q(1, 2)), bp(1, Q(1, 2))])  # constant 1/2
    c = compose(outer, inner)
    assert c(0) == 0 and c(1) == 0
    assert c == pwfn.bounded([bp(0, 0), bp(1, 0)])


def test_compose_range_mismatch_raises():
    f = pwfn.identity(0, 1)
    g = pwfn.identity(0, 2)
    with pytest.raises(DomainError):
        compose(f, g)
    with pytest.raises(DomainError):
        compose(f, pwfn.identity())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_compose_associativity_on_utilities(seed):
    f = gen_utility(seed * 3 + 0, "uf-left").fn
    g = gen_utility(seed * 3 + 1, "uf").fn
    h = gen_utility(seed * 3 + 2, "uf-left").fn
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_compose_associativity_on_distortions(seed):
    d1 = gen_distortion(seed * 3 + 0, "df").fn
    d2 = gen_distortion(seed * 3 + 1, "df").fn
    d3 = gen_distortion(seed * 3 + 2, "df").fn
    assert compose(d1, compose(d2, d3)) == compose(compose(d1, d2), d3)


# -- strict_inverse ----------------------------------------------------------------


def test_strict_inverse_affine():
    f = pwfn.affine(2, 3)
    inv = strict_inverse(f)
    assert inv == pwfn.affine(Q(1, 2), Q(-3, 2))


def test_strict_inverse_piecewise_roundtrips():
    f = pwfn.from_points([(0, 0), (Q(1, 2), Q(1, 4)), (1, 1)])
    inv = strict_inverse(f)
    assert inv == pwfn.from_points([(0, 0), (Q(1, 4), Q(1, 2)), (1, 1)])
    assert compose(f, inv) == pwfn.identity(0, 1)
    assert compose(inv, f) == pwfn.identity(0, 1)


def test_strict_inverse_rejects_jumps_and_flats():
    with pytest.raises(NotInvertibleError):
        strict_inverse(pwfn.step_open(Q(1, 2)))
    with pytest.raises(NotInvertibleError):
        strict_inverse(pwfn.on_reals([bp(0, 0)], 0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_strict_inverse_roundtrips_on_generated(seed):
    f = gen_utility(seed, "uf-strict").fn
    inv = strict_inverse(f)
    assert compose(f, inv) == pwfn.identity()
    assert compose(inv, f) == pwfn.identity()


# -- classify -----------------------------------------------------------------------


def test_classify_identity_all_flags():
    c = classify(pwfn.identity(0, 1))
    assert c.increasing and c.strictly_increasing and c.continuous
    assert c.left_continuous and c.right_continuous and c.surjective


def test_classify_step():
    c = classify(pwfn.step_open(Q(1, 2)))
    assert c.increasing and c.left_continuous
    assert not c.continuous and not c.right_continuous and not c.strictly_increasing
    assert not c.surjective


def test_classify_jump_utility():
    c = classify(JUMP_AT_HALF)
    assert c.increasing and c.left_continuous
    assert not c.continuous
    assert c.strictly_increasing  # jumps do not break strictness
    assert not c.surjective


def test_classify_clamped_tails_not_surjective():
    c = classify(pwfn.on_reals([bp(0, 0)], 0, 1))
    assert c.continuous and not c.surjective and not c.strictly_increasing


# -- pseudo inverse ---------------------------------------------------------------


def test_pseudo_inverse_matches_right_inverse_pointwise():
    flat = pwfn.on_reals([bp(0, 0), bp(1, 0)], 1, 1)  # flat on [0, 1]
    pinv = pwfn.pseudo_inverse(flat)
    for x in grid(-3, 3, 8):
        assert pinv(x) == right_inverse(flat, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(-12, 12))
def test_pseudo_inverse_generated(seed, num):
    u = gen_utility(seed, "uf-strict").fn
    pinv = pwfn.pseudo_inverse(u)
    x = Q(num, 3)
    assert pinv(x) == right_inverse(u, x)

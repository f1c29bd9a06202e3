from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hienergy import (
    DenseFunction,
    GroupSet,
    balanced,
    generalized_conv,
    make_group,
    minkowski_index,
    mu,
    reduced_conv,
    shifted_intersection,
)
from hienergy.config import BudgetError


def test_balanced_anchor(z5):
    a = GroupSet.from_indices(z5, [0, 1])
    f = balanced(a)
    assert list(f.values) == [
        Fraction(3, 5),
        Fraction(3, 5),
        Fraction(-2, 5),
        Fraction(-2, 5),
        Fraction(-2, 5),
    ]
    assert f.total() == 0


def test_balanced_degenerate(z5):
    assert all(v == 0 for v in balanced(GroupSet.full(z5)).values)
    assert all(v == 0 for v in balanced(GroupSet.empty(z5)).values)


def test_mu(z5):
    g3 = make_group(3)
    assert list(mu(GroupSet.from_indices(g3, [0])).values) == [1, 0, 0]
    g4 = make_group(4)
    assert list(mu(GroupSet.full(g4)).values) == [Fraction(1, 4)] * 4
    assert list(mu(GroupSet.from_indices(z5, [0, 1])).values) == [
        Fraction(1, 2),
        Fraction(1, 2),
        0,
        0,
        0,
    ]
    assert sum(mu(GroupSet.from_indices(z5, [2, 4])).values) == 1
    with pytest.raises(ValueError):
        mu(GroupSet.empty(z5))


def test_generalized_conv_anchor(z5):
    a = GroupSet.from_indices(z5, [0, 1])
    t = generalized_conv([a.indicator(), a.indicator()])
    # C_2(A)(x1,x2) = (A o A)(x2-x1)
    circ = [2, 1, 0, 0, 1]
    for x1 in range(5):
        for x2 in range(5):
            assert t.value_at((x1, x2)) == circ[(x2 - x1) % 5]
    assert t.value_at((0, 0)) == 2
    assert t.value_at((0, 2)) == 0


def test_generalized_conv_constant():
    g = make_group(6)
    c = DenseFunction.constant(g, 3)
    t = generalized_conv([c, c])
    assert all(v == 9 * 6 for v in t.values)


def test_generalized_conv_arity_one(z5):
    f = DenseFunction.from_values(z5, [1, 2, 3, -1, 0])
    t = generalized_conv([f])
    assert all(v == 5 for v in t.values)  # sum f = 5, constant


def test_generalized_conv_matches_oracle():
    factors = (2, 3)
    g = make_group(factors)
    rng = np.random.default_rng(5)
    fs = [
        DenseFunction.from_values(g, [int(v) for v in rng.integers(-2, 3, g.order)])
        for _ in range(3)
    ]
    t = generalized_conv(fs)
    raw = [list(f.values) for f in fs]
    for xs in [(0, 1, 2), (3, 3, 3), (5, 0, 4), (1, 2, 0)]:
        assert t.value_at(xs) == oracles.generalized_conv_value(factors, raw, xs)


def test_generalized_conv_diagonal_shift_invariance():
    """Exhaustive diagonal-shift symmetry on a small group."""
    factors = (2, 2)
    g = make_group(factors)
    rng = np.random.default_rng(9)
    f = DenseFunction.from_values(g, [int(v) for v in rng.integers(-3, 4, g.order)])
    t = generalized_conv([f, f, f])
    for xs in np.ndindex(4, 4, 4):
        for w in range(4):
            shifted = tuple(g.add(x, w) for x in xs)
            assert t.value_at(xs) == t.value_at(shifted)


def test_reduced_conv_is_pinned_slice(z5):
    rng = np.random.default_rng(2)
    f = DenseFunction.from_values(z5, [int(v) for v in rng.integers(-3, 4, 5)])
    t2 = reduced_conv(f, 2)
    circ = oracles.convolve_circ((5,), list(f.values), list(f.values))
    assert [int(v) for v in t2.values] == circ  # C'_2 = f o f
    t3 = reduced_conv(f, 3)
    full = generalized_conv([f, f, f])
    for y1 in range(5):
        for y2 in range(5):
            assert t3.value_at((y1, y2)) == full.value_at((0, y1, y2))


def test_reduced_conv_set_anchors(z5):
    a = GroupSet.from_indices(z5, [0, 1])
    t = reduced_conv(a, 2)
    assert t.value_at((0,)) == 2  # C'_2(A)(0) = |A|
    ones = DenseFunction.constant(make_group(7), 1)
    t = reduced_conv(ones, 4)
    assert all(v == 7 for v in t.values)


def test_shifted_intersection(z5):
    a = GroupSet.from_indices(z5, [0, 1])
    assert shifted_intersection(a, []).elements().tolist() == [0, 1]
    az = shifted_intersection(a, [1])
    assert az.elements().tolist() == [0]
    # subgroup invariance
    g = make_group((2, 2, 2))
    h = GroupSet.from_indices(g, [0, 1, 2, 3])  # a subgroup (last two coords)
    for zs in [[1], [2, 3], [1, 2, 3]]:
        assert shifted_intersection(h, zs).elements().tolist() == [0, 1, 2, 3]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_shifted_intersection_matches_oracle(seed):
    factors = (3, 4)
    g = make_group(factors)
    rng = np.random.default_rng(seed)
    members = [int(x) for x in np.flatnonzero(rng.random(12) < 0.5)]
    a = GroupSet.from_indices(g, members)
    zs = [int(z) for z in rng.integers(0, 12, size=rng.integers(0, 3))]
    got = shifted_intersection(a, zs).elements().tolist()
    assert got == oracles.shifted_intersection_members(factors, members, zs)


def test_minkowski_index(z5):
    assert minkowski_index(z5, (0,), (0, 0)) == (0, 0)
    assert minkowski_index(z5, (1, 2), (3,)) == (4, 0)
    assert minkowski_index(z5, (0, 1), (0, 2)) == (0, 2, 1, 3)
    # triple sums
    assert minkowski_index(z5, (1,), (2,), (3,)) == (1 + 2 + 3 - 5,)


def test_tensor_budget_refusal(z5):
    f = DenseFunction.constant(z5, 1)
    with pytest.raises(BudgetError):
        generalized_conv([f] * 4, budget=100)
    with pytest.raises(BudgetError):
        reduced_conv(f, 4, budget=20)


def test_set_file_round_trip_types(z5):
    a = GroupSet.from_indices(z5, [4, 2])
    assert a.cardinality == 2
    assert a.density == Fraction(2, 5)
    assert 2 in a and 3 not in a

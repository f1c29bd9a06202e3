import json
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_int_function, random_set
from hienergy import DenseFunction, GroupSet, balanced, make_group
from hienergy import checks
from hienergy import suite as hsuite
from hienergy.checks import cal_L
from hienergy.groups import parse_group


def test_cal_L():
    assert cal_L(1) == 1
    assert cal_L(0.5) == 2
    assert cal_L(1 / 8) == 4
    with pytest.raises(ValueError):
        cal_L(0)
    with pytest.raises(ValueError):
        cal_L(1.5)


def test_uniformity_bound_trivial_zero_g():
    g = make_group(7)
    sets = [GroupSet.from_indices(g, [0, 2, 3]), GroupSet.from_indices(g, [1, 4])]
    zero = DenseFunction.constant(g, 0)
    r = checks.check_uniformity_bound(sets, zero, 2, 2)
    assert r.holds and r.lhs == 0 and r.margin == 0.0


def test_uniformity_bound_full_sets():
    g = make_group(7)
    sets = [GroupSet.full(g)] * 2
    ind = GroupSet.from_indices(g, [0, 1, 5]).indicator()
    r = checks.check_uniformity_bound(sets, ind, 2, 2)
    assert r.holds and r.lhs == 0


def test_uniformity_bound_random_fuzz():
    rng = np.random.default_rng(0)
    g = make_group(7)
    for trial in range(60):
        sets = [random_set(g, 0.5, rng) for _ in range(2)]
        b = random_set(g, 0.45, rng)
        r = checks.check_uniformity_bound(sets, b.indicator(), 2, 2)
        assert r.holds, (trial, r)


def test_uniformity_bound_parity_errors():
    g = make_group(7)
    sets = [GroupSet.from_indices(g, [0, 1]), GroupSet.from_indices(g, [2, 3])]
    with pytest.raises(ValueError):
        checks.check_uniformity_bound(sets, GroupSet.full(g).indicator(), 3, 2)
    with pytest.raises(ValueError):
        checks.check_uniformity_bound(sets + [sets[0]], GroupSet.full(g).indicator(), 2, 3)


def test_circ_moment_identity_set():
    g = make_group(7)
    a = GroupSet.full(g)
    b = GroupSet.from_indices(g, [0, 3])
    r = checks.check_circ_moment(a, b, 2)
    # A = G: lhs = |B|^l N exactly, eps = 0
    assert r.lhs == 2**2 * 7
    assert r.holds
    assert r.details["epsilon"] == 0.0


def test_circ_moment_singleton_b():
    g = make_group(11)
    rng = np.random.default_rng(1)
    a = random_set(g, 0.6, rng)
    b = GroupSet.from_indices(g, [4])
    r = checks.check_circ_moment(a, b, 2)
    assert r.lhs == a.cardinality  # sum (A o {x})^2 = |A|
    assert r.holds


def test_circ_moment_fuzz():
    rng = np.random.default_rng(5)
    g = make_group(11)
    for _ in range(40):
        a = random_set(g, 0.55, rng)
        b = random_set(g, 0.5, rng)
        r = checks.check_circ_moment(a, b, 2)
        if r.hypothesis_ok:
            assert r.holds


def test_dispersion_full_sets_zero():
    g = make_group((2, 2, 2, 2))
    r = checks.check_dispersion([GroupSet.full(g)] * 2, 2, 2)
    assert r.lhs == 0 and r.holds


def test_dispersion_subgroup_hypothesis_fails():
    g = make_group((2, 2, 2, 2))
    h = GroupSet.from_indices(g, [0, 1, 2, 3])
    r = checks.check_dispersion([h, h], 2, 2)
    assert not r.hypothesis_ok  # subgroups are badly non-uniform
    assert r.holds  # the bound is loose enough anyway


def test_dispersion_fuzz():
    rng = np.random.default_rng(9)
    g = parse_group("F2^5")
    for _ in range(25):
        sets = [random_set(g, 0.5, rng) for _ in range(2)]
        r = checks.check_dispersion(sets, 2, 2)
        assert r.holds


def test_holder_exact():
    rng = np.random.default_rng(3)
    for spec in ("Z9", "F2^4", "Z12"):
        g = parse_group(spec)
        for _ in range(20):
            a = random_set(g, 0.5, rng)
            for k, l in [(2, 2), (3, 2), (4, 2), (3, 3)]:
                r = checks.check_holder(a, k, l)
                assert r.holds


def test_e_to_d_full_group():
    g = make_group(13)
    r = checks.check_e_to_d(GroupSet.full(g), 5, 2, range(2, 9))
    assert r.holds and r.details["witness_k1"] == 2
    assert r.details["epsilon"] == 0.0


def test_e_to_d_random():
    g = make_group(13)
    rng = np.random.default_rng(21)
    a = random_set(g, 0.5, rng)
    r = checks.check_e_to_d(a, 5, 2, range(2, 9))
    assert r.holds  # a witness exists in range
    assert r.details["witness_k1"] in range(2, 9)


def test_e_to_d_subgroup_witness_at_2():
    g = parse_group("F2^5")
    h = GroupSet.from_indices(g, range(4))  # subgroup of size 4
    r = checks.check_e_to_d(h, 5, 2, range(2, 9))
    assert r.holds and r.details["witness_k1"] == 2


def test_e_to_d_parity():
    g = make_group(13)
    a = GroupSet.from_indices(g, [0, 1, 2])
    with pytest.raises(ValueError):
        checks.check_e_to_d(a, 4, 2, range(2, 5))
    with pytest.raises(ValueError):
        checks.check_e_to_d(a, 5, 3, range(2, 5))


AP4_FORMS = [(1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0)]


def test_counting_constants_saturate():
    g = make_group(5)
    ones = DenseFunction.constant(g, 1)
    r = checks.check_counting([ones] * 4, AP4_FORMS, 2, 2)
    assert r.lhs == 25
    assert abs(r.lhs - r.rhs) <= 1e-9 * r.rhs
    assert r.holds


def test_counting_zero_function():
    g = make_group(5)
    zero = DenseFunction.constant(g, 0)
    ones = DenseFunction.constant(g, 1)
    r = checks.check_counting([zero, ones, ones, ones], AP4_FORMS, 2, 2)
    assert r.lhs == 0 and r.holds


def test_counting_random_signs():
    g = make_group(7)
    rng = np.random.default_rng(2)
    for _ in range(30):
        fs = [
            DenseFunction.from_values(g, [int(v) for v in rng.choice([-1, 1], 7)])
            for _ in range(4)
        ]
        r = checks.check_counting(fs, AP4_FORMS, 2, 2)
        assert r.holds


def test_counting_rejects_bad_forms():
    g = make_group(5)
    ones = DenseFunction.constant(g, 1)
    with pytest.raises(ValueError):
        checks.check_counting([ones] * 4, [(1, 0, 0), (2, 0, 0), (1, 2, 0), (1, 3, 0)], 2, 2)
    with pytest.raises(ValueError):  # proportional pair
        checks.check_counting([ones] * 4, [(1, 1, 0), (2, 2, 1), (1, 2, 0), (1, 3, 0)], 2, 2)
    g6 = make_group(6)
    with pytest.raises(ValueError):  # non-prime modulus
        checks.check_counting([DenseFunction.constant(g6, 1)] * 4, AP4_FORMS, 2, 2)


def test_norm_axioms_homogeneity_witness():
    g = make_group(8)
    rng = np.random.default_rng(7)
    f = random_int_function(g, rng, -2, 2)
    r = checks.check_general_norm_axioms((2, 2), f, f)
    assert r.holds
    # triangle equality for f = g: ||2f|| = 2 ||f||
    assert abs(r.lhs - r.rhs) <= 1e-9 * max(1.0, r.rhs)


def test_norm_axioms_fuzz():
    g = make_group(8)
    rng = np.random.default_rng(11)
    for _ in range(20):
        f = hsuite._random_bounded_rational(g, rng)
        h = hsuite._random_bounded_rational(g, rng)
        for shape in [(2, 2), (2, 4), (2, 2, 2)]:
            r = checks.check_general_norm_axioms(shape, f, h)
            assert r.holds, (shape, r.details)


def test_norm_axioms_requires_norm_grade():
    g = make_group(8)
    f = DenseFunction.constant(g, 1)
    with pytest.raises(ValueError):
        checks.check_general_norm_axioms((2, 3), f, f)


def test_identity_checkers_exact():
    rng = np.random.default_rng(13)
    for spec in ("Z6", "F2^3", "Z4xZ2"):
        g = parse_group(spec)
        f = random_int_function(g, rng, -2, 2)
        assert checks.check_expectation_identity(f, 2, 2).holds
        assert checks.check_inductive_identity(f, (2, 2)).holds
        assert checks.check_reduction_identity(f, 2, 2, points=6, seed=1).holds
        assert checks.check_diagonal_shift(f, 2, points=6, seed=1).holds


def test_report_serialization_round_trip():
    g = make_group(7)
    a = GroupSet.from_indices(g, [0, 1, 2])
    r = checks.check_holder(a, 2, 2)
    blob = r.to_json()
    parsed = json.loads(blob)
    assert parsed["check"] == "holder"
    assert parsed["holds"] is True
    assert isinstance(parsed["lhs"], int)


def test_scenario_direct_sum_fixture():
    g = parse_group("F2^10")
    a, (main, regime) = checks.scenario_planted(
        g, 2, 0.125, seed=1, kind="direct-sum",
        uniform_shape=(2, 2), structured_shape=(8, 3), ratio_target=2.0,
    )
    assert main.holds, main.details
    assert regime.holds
    assert main.details["ratio"] >= 2.0


def test_scenario_direct_sum_full_subgroup():
    g = parse_group("F2^4")
    a, (main, regime) = checks.scenario_planted(
        g, 4, 1.0, seed=1, kind="direct-sum",
        uniform_shape=(2, 2), structured_shape=(2, 3),
    )
    # H = whole group forces A = G, all eps = 0
    assert main.details["epsilon_uniform_shape"] == 0.0
    assert main.details["epsilon_structured_shape"] == 0.0


def test_scenario_removal_fixture():
    g = parse_group("F2^10")
    a, (main, regime) = checks.scenario_planted(g, 4, 0.125, seed=1, kind="removal")
    assert main.holds
    assert regime.holds  # beta <= delta


def test_suite_default_manifest_runs_and_holds():
    lines = hsuite.default_manifest(seeds=(1,))
    reports = hsuite.run_suite(lines)
    assert reports, "default manifest produced no reports"
    for r in reports:
        assert r.holds, (r.check, r.seed, r.to_dict())


def test_suite_negative_control_and_threads():
    lines = ["holder seed=1", "negative-control seed=0", "# comment", ""]
    reports = hsuite.run_suite(lines, threads=2)
    assert [r.check for r in reports] == ["holder", "negative-control"]
    assert reports[0].holds and not reports[1].holds


def test_manifest_parse_errors():
    with pytest.raises(ValueError):
        hsuite.parse_manifest_line("not-a-check seed=1")
    with pytest.raises(ValueError):
        hsuite.parse_manifest_line("holder badtoken")

"""Statement verifiers: desk instances with exact expected sets, the
builtin catalog, hypothesis-failure routing, and the sampled chain
inequality."""

from __future__ import annotations

import random

import pytest

from monokit.analysis import check_3star, check_maximal, check_monotone
from monokit.errors import InputError, PreconditionError
from monokit.genops import operator_pool, scenario_pool
from monokit.linalg import Matrix, Q, Vector
from monokit.operators import (
    Scenario,
    identity_operator,
    linear_relation_from_generators,
    linear_relation_from_matrix,
    matrix_operator,
    normal_cone_operator,
    op_sum,
    pwl1d_operator,
)
from monokit.polyhedra import Polyhedron, PolySet, polyset_equal
from monokit.theorems import (
    W_BOTH,
    W_FULL_DOMAIN,
    W_FULL_RANGE,
    WMode,
    builtin_scenarios,
    chain_inequality_holds,
    custom_w,
    run_builtin,
    verify_corollary_surjective,
    verify_domain_description,
    verify_kt_range,
    verify_reflected_composition,
    verify_sum_range_bound,
    verify_theorem1,
    verify_theorem2,
)


def rotation():
    return matrix_operator(Matrix.of([[0, -1], [1, 0]]))


def horizontal_axis_cone():
    return normal_cone_operator(Polyhedron.from_h(2, [], [(Vector.of([0, 1]), Q(0))]))


def vertical_axis_set():
    return PolySet.of(Polyhedron.from_h(2, [], [(Vector.of([1, 0]), Q(0))]))


def point_cone(values):
    return normal_cone_operator(Polyhedron.point(Vector.of(values)))


def interval_cone(lo, hi):
    return normal_cone_operator(Polyhedron.box([lo], [hi]))


# -- structured sum ----------------------------------------------------------


def test_theorem1_rotation_against_axis_cone_verified_exactly():
    s = Scenario(
        rotation(),
        [(linear_relation_from_matrix(Matrix.identity(2)), horizontal_axis_cone())],
    )
    report = verify_theorem1(s)
    assert report.status == "Verified"
    axis = vertical_axis_set()
    assert polyset_equal(report.lhs_set, axis).holds
    assert polyset_equal(report.rhs_set, axis).holds
    names = [h.name for h in report.hypothesis_results]
    assert names == ["A monotone", "B_1 three-star", "composite maximal"]
    # the axis normal cone has a subspace graph, so its check is exact
    assert report.hypothesis_results[1].outcome == "pass"


def test_theorem1_generated_scenarios_all_verified():
    rng = random.Random(41)
    for s in scenario_pool(41, 5):
        report = verify_theorem1(s)
        assert report.status == "Verified", report.hypothesis_results
        assert chain_inequality_holds(s, rng, 20)


def test_theorem1_bad_inner_operator_fails_hypothesis():
    s = Scenario(
        identity_operator(2),
        [(linear_relation_from_matrix(Matrix.identity(2)), rotation())],
    )
    report = verify_theorem1(s)
    assert report.status == "HypothesisFailed"
    assert report.hypothesis_results[1].outcome == "fail"
    assert report.conclusion is None


def test_chain_inequality_on_example3():
    s = Scenario(
        rotation(),
        [(linear_relation_from_matrix(Matrix.identity(2)), horizontal_axis_cone())],
    )
    assert chain_inequality_holds(s, random.Random(3), 100)


# -- naive sum-range contrast ------------------------------------------------


def test_sum_range_bound_contrast_fails_hypothesis_with_witness():
    report = verify_sum_range_bound(rotation(), horizontal_axis_cone())
    assert report.status == "HypothesisFailed"
    by_name = {h.name: h for h in report.hypothesis_results}
    assert by_name["A three-star"].outcome == "fail"
    assert by_name["B three-star"].outcome == "pass"
    assert polyset_equal(report.lhs_set, vertical_axis_set()).holds
    assert polyset_equal(report.rhs_set, PolySet.full(2)).holds
    assert not report.conclusion.holds
    w = report.witnesses[0]
    assert report.rhs_set.member(w) and not report.lhs_set.member(w)


# -- surjectivity corollary --------------------------------------------------


def test_corollary_interval_cone_plus_identity():
    report = verify_corollary_surjective(interval_cone(0, 1), identity_operator(1))
    assert report.status == "Verified"


def test_corollary_zero_plus_identity():
    report = verify_corollary_surjective(
        matrix_operator(Matrix.of([[0, 0], [0, 0]])), identity_operator(2)
    )
    assert report.status == "Verified"


def test_corollary_rotation_plus_identity():
    report = verify_corollary_surjective(rotation(), identity_operator(2))
    assert report.status == "Verified"
    # the rotation is only probe-monotone-free: its hypothesis is exact
    assert report.hypothesis_results[0].outcome == "pass"


def test_corollary_non_surjective_inner_fails():
    report = verify_corollary_surjective(identity_operator(1), matrix_operator(Matrix.of([[0]])))
    by_name = {h.name: h for h in report.hypothesis_results}
    assert by_name["B surjective"].outcome == "fail"
    assert report.status == "HypothesisFailed"


# -- domain description ------------------------------------------------------


def test_domain_description_interval_cone():
    report = verify_domain_description(
        interval_cone(0, 1),
        [
            (Vector.of([Q(1, 2)]), Vector.of([0])),
            (Vector.of([2]), Vector.of([0])),
        ],
    )
    assert report.status == "Verified"
    assert report.meta["protocol"] == "probe-verified"
    assert report.conclusion is True


def test_domain_description_needs_probes():
    with pytest.raises(InputError):
        verify_domain_description(identity_operator(1), [])


def test_domain_description_needs_maximality():
    seg = Polyhedron.from_v(2, [Vector.of([0, 0]), Vector.of([1, 1])], [], [])
    from monokit.operators import make_operator

    with pytest.raises(PreconditionError):
        verify_domain_description(make_operator(1, 1, [seg]), [(Vector.of([0]), Vector.of([0]))])


# -- displacement range ------------------------------------------------------


def test_theorem2_full_domain_identity_against_point_cone():
    report = verify_theorem2(identity_operator(1), point_cone([0]), W_FULL_DOMAIN)
    assert report.status == "Verified"
    assert polyset_equal(report.rhs_set, PolySet.full(1)).holds
    assert polyset_equal(report.lhs_set, PolySet.full(1)).holds


def test_theorem2_custom_singleton_for_point_cones():
    report = verify_theorem2(
        point_cone([2]), point_cone([-1]), custom_w(PolySet.of(Polyhedron.point(Vector.of([3]))))
    )
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, PolySet.of(Polyhedron.point(Vector.of([3])))).holds


def test_theorem2_both_mode_zero_operators():
    zero = matrix_operator(Matrix.of([[0]]))
    report = verify_theorem2(zero, zero, W_BOTH)
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, PolySet.of(Polyhedron.point(Vector.of([0])))).holds


def test_theorem2_full_range_mode_identity_pair():
    report = verify_theorem2(identity_operator(1), identity_operator(1), W_FULL_RANGE)
    assert report.status == "Verified"


def test_theorem2_full_domain_mode_rejects_partial_domain():
    report = verify_theorem2(interval_cone(0, 1), identity_operator(1), W_FULL_DOMAIN)
    assert report.status == "HypothesisFailed"
    by_name = {h.name: h for h in report.hypothesis_results}
    assert by_name["dom A is the whole space"].outcome == "fail"


def test_theorem2_requires_maximal_inputs():
    seg = Polyhedron.from_v(2, [Vector.of([0, 0]), Vector.of([1, 1])], [], [])
    from monokit.operators import make_operator

    with pytest.raises(PreconditionError):
        verify_theorem2(make_operator(1, 1, [seg]), identity_operator(1), W_BOTH)


def test_theorem2_custom_dimension_mismatch():
    with pytest.raises(InputError):
        verify_theorem2(identity_operator(1), identity_operator(1), custom_w(PolySet.full(2)))


def test_wmode_validation():
    with pytest.raises(InputError):
        WMode("Sideways")
    with pytest.raises(InputError):
        WMode("Custom")
    with pytest.raises(InputError):
        WMode("BothThreeStar", custom=PolySet.full(1))


# -- Kuhn-Tucker range -------------------------------------------------------


def kt_expected_strip():
    return PolySet.of(
        Polyhedron.from_h(
            2,
            [(Vector.of([0, 1]), Q(-1)), (Vector.of([0, -1]), Q(-1))],
            [],
        )
    )


def test_kt_variant_i_identity_triple_full_plane():
    report = verify_kt_range(
        identity_operator(1), identity_operator(1), linear_relation_from_matrix(Matrix.identity(1)), "I"
    )
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, PolySet.full(2)).holds
    assert polyset_equal(report.rhs_set, PolySet.full(2)).holds


def test_kt_variant_ii_point_and_interval_strip():
    report = verify_kt_range(
        point_cone([0]), interval_cone(-1, 1), linear_relation_from_matrix(Matrix.identity(1)), "II"
    )
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, kt_expected_strip()).holds
    assert polyset_equal(report.rhs_set, kt_expected_strip()).holds


def test_kt_variant_i_interval_with_zero_map_strip():
    report = verify_kt_range(
        identity_operator(1), interval_cone(-1, 1), linear_relation_from_matrix(Matrix.of([[0]])), "I"
    )
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, kt_expected_strip()).holds


def test_kt_rejects_multivalued_coupling():
    vertical = linear_relation_from_generators(1, 1, [Vector.of([0, 1])])
    with pytest.raises(InputError):
        verify_kt_range(identity_operator(1), identity_operator(1), vertical, "I")


def test_kt_rejects_unknown_variant():
    with pytest.raises(InputError):
        verify_kt_range(
            identity_operator(1),
            identity_operator(1),
            linear_relation_from_matrix(Matrix.identity(1)),
            "III",
        )


# -- reflected composition ---------------------------------------------------


def test_reflected_composition_identity_plus_point():
    report = verify_reflected_composition(identity_operator(1), point_cone([0]))
    assert report.status == "Verified"
    assert polyset_equal(report.lhs_set, PolySet.full(1)).holds


def test_reflected_composition_identity_pair():
    report = verify_reflected_composition(identity_operator(1), identity_operator(1))
    assert report.status == "Verified"


def test_reflected_composition_identity_plus_interval():
    report = verify_reflected_composition(identity_operator(1), interval_cone(-1, 1))
    assert report.status == "Verified"


def test_reflected_composition_partial_domain_fails():
    report = verify_reflected_composition(interval_cone(0, 1), identity_operator(1))
    assert report.status == "HypothesisFailed"


def test_reflected_composition_requires_maximality():
    seg = Polyhedron.from_v(2, [Vector.of([0, 0]), Vector.of([1, 1])], [], [])
    from monokit.operators import make_operator

    with pytest.raises(PreconditionError):
        verify_reflected_composition(make_operator(1, 1, [seg]), identity_operator(1))


# -- builtin catalog ---------------------------------------------------------


def test_builtin_catalog_statuses():
    expected_failure = {"example3_brezis_haraux_contrast"}
    for name in builtin_scenarios():
        report = run_builtin(name)
        if name in expected_failure:
            assert report.status == "HypothesisFailed", name
        else:
            assert report.status == "Verified", name
        # soundness sentinel: nothing in the catalog may come out Refuted
        assert report.status != "Refuted", name


def test_builtin_lookup_errors():
    with pytest.raises(InputError):
        run_builtin("")
    with pytest.raises(InputError):
        run_builtin("no_such_scenario")


def test_builtin_catalog_contains_required_names():
    names = set(builtin_scenarios())
    assert "example3_rotation_normalcone" in names
    assert "theorem2_mode_ii_identity_plus_point" in names
    assert "example3_brezis_haraux_contrast" in names


# -- generator invariants ----------------------------------------------------


def test_generated_operators_are_monotone_and_maximal():
    for m in operator_pool(17, 9):
        assert check_monotone(m).holds
        assert check_maximal(m).holds


def test_generated_scenario_inner_operators_prove_three_star():
    for s in scenario_pool(23, 4):
        for _, b in s.couples:
            assert check_3star(b).tag == "Proved"

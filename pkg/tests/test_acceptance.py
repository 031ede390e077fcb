"""Acceptance suite: nine end-to-end criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -v` to get one pass/fail line per
criterion.  Everything is exact rational arithmetic, so every comparison is
zero-tolerance; the only numeric thresholds are wall-clock budgets.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time

import pytest

from monokit.analysis import (
    _point_pool,
    bh_inf_status,
    check_3star,
    check_maximal,
    rint_range_identity,
)
from monokit.genops import (
    drop_random_piece,
    operator_pool,
    random_box_normal_cone,
    random_triangle_normal_cone,
    sample_graph_points,
    scenario_pool,
)
from monokit.linalg import Matrix, Q, Vector
from monokit.operators import (
    Scenario,
    apply_operator,
    identity_operator,
    inverse,
    linear_relation_from_matrix,
    matrix_operator,
    normal_cone_operator,
    op_domain,
    op_range,
    op_sum,
    resolvent,
    scale_output,
)
from monokit.polyhedra import (
    PolySet,
    Polyhedron,
    polyset_equal,
    polyset_minkowski,
    rel_interior_point,
)
from monokit.theorems import (
    W_BOTH,
    W_FULL_DOMAIN,
    chain_inequality_holds,
    verify_kt_range,
    verify_theorem1,
    verify_theorem2,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="module")
def pool():
    ops = operator_pool(2026, 51)
    assert len(ops) >= 50
    assert {m.dim_in for m in ops} == {1, 2, 3}
    return ops


def _rotation():
    return matrix_operator(Matrix.of([[0, -1], [1, 0]]))


def _axis_cone():
    return normal_cone_operator(Polyhedron.from_h(2, [], [(Vector.of([0, 1]), Q(0))]))


def _vertical_axis() -> PolySet:
    return PolySet.of(Polyhedron.from_h(2, [], [(Vector.of([1, 0]), Q(0))]))


def test_criterion_1_structured_sum_worked_example():
    started = time.monotonic()
    rot, cone = _rotation(), _axis_cone()
    axis = _vertical_axis()

    ran_sum = op_range(op_sum(rot, cone))
    assert polyset_equal(ran_sum, axis).holds

    naive = polyset_minkowski(op_range(rot), op_range(cone))
    assert polyset_equal(naive, PolySet.full(2)).holds

    gap = polyset_equal(ran_sum, naive)
    assert not gap.holds and gap.witness is not None
    w = gap.witness
    assert naive.member(w) != ran_sum.member(w)

    s = Scenario(rot, [(linear_relation_from_matrix(Matrix.identity(2)), cone)])
    rep = verify_theorem1(s)
    assert rep.status == "Verified"
    assert polyset_equal(rep.lhs_set, axis).holds
    assert polyset_equal(rep.rhs_set, axis).holds

    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"worked example took {elapsed:.2f}s"
    print(f"ACCEPTANCE 1 PASS: worked example exact in {elapsed * 1000:.0f} ms")


def test_criterion_2_resolvent_identity_suite(pool):
    started = time.monotonic()
    for index, m in enumerate(pool):
        jm = resolvent(m)
        jm_inv = resolvent(inverse(m))
        complement = op_sum(identity_operator(m.dim_in), scale_output(jm, Q(-1)))
        assert polyset_equal(jm_inv.graph, complement.graph).holds, index

        rng = random.Random(9000 + index)
        for _ in range(100):
            x = Vector.of(
                [Q(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(m.dim_in)]
            )
            first = rel_interior_point(apply_operator(jm, x).pieces[0])
            second = rel_interior_point(apply_operator(jm_inv, x).pieces[0])
            assert m.graph.member(first.concat(second)), index
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"resolvent suite took {elapsed:.1f}s"
    print(
        f"ACCEPTANCE 2 PASS: resolvent identity on {len(pool)} operators, "
        f"100 samples each, {elapsed:.1f}s"
    )


def test_criterion_3_minty_suite(pool):
    rng = random.Random(31)
    dropped_count = 0
    for index, m in enumerate(pool):
        assert check_maximal(m).holds, index
        smaller = drop_random_piece(rng, m)
        if smaller is None:
            continue
        dropped_count += 1
        verdict = check_maximal(smaller)
        assert not verdict.holds, index
        z = verdict.witness
        assert z is not None
        reachable = op_range(op_sum(identity_operator(smaller.dim_in), smaller))
        assert not reachable.member(z), index
    assert dropped_count >= 25
    print(
        f"ACCEPTANCE 3 PASS: Minty on {len(pool)} operators, "
        f"{dropped_count} piece-deleted graphs refuted with checked witnesses"
    )


def _assert_certified_descent(m, witness):
    x, u, (point, direction) = witness
    values = []
    for t in (Q(1), Q(10), Q(100)):
        y = point + direction.scale(t)
        assert m.graph.member(y), "descent certificate leaves the graph"
        n = m.dim_in
        values.append((y.block(0, n) - x).dot(y.block(n, 2 * n) - u))
    assert values[0] > values[1] > values[2], "descent certificate fails to descend"


def test_criterion_4_three_star_discrimination():
    rot = _rotation()
    verdict = check_3star(rot)
    assert verdict.tag == "Refuted"
    _assert_certified_descent(rot, verdict.witness)

    assert check_3star(identity_operator(2)).tag == "Proved"

    rng = random.Random(58)
    cones = [random_box_normal_cone(rng, 1) for _ in range(2)]
    cones += [random_box_normal_cone(rng, 2) for _ in range(2)]
    cones += [random_triangle_normal_cone(rng) for _ in range(2)]
    for index, m in enumerate(cones):
        verdict = check_3star(m)
        assert verdict.tag == "ProbePassed", (index, verdict.tag)
        assert verdict.probes_used > 0

        # brute-force sampling oracle: certified bounds are never undercut
        samples = sample_graph_points(m, random.Random(100 + index), 500)
        n = m.dim_in
        probes = [
            (x, u)
            for x in _point_pool(op_domain(m))
            for u in _point_pool(op_range(m))
        ][: verdict.probes_used]
        for x, u in probes:
            status = bh_inf_status(m, x, u)
            assert status.tag == "Bounded", "probe sweep and recheck disagree"
            floor = status.lower_bound
            for y in samples:
                value = (y.block(0, n) - x).dot(y.block(n, 2 * n) - u)
                assert value >= floor, "a sample undercuts the certified infimum"
    print(
        "ACCEPTANCE 4 PASS: rotation refuted with verified descent, identity proved, "
        f"{len(cones)} normal cones probe-passed against 500-sample oracles"
    )


def test_criterion_5_structured_sum_scenario_suite():
    scenarios = scenario_pool(777, 20)
    assert len(scenarios) >= 20
    refuted = 0
    for index, s in enumerate(scenarios):
        rep = verify_theorem1(s)
        refuted += rep.status == "Refuted"
        assert rep.status == "Verified", (index, rep.status)
        assert chain_inequality_holds(s, random.Random(400 + index), 100), index
    assert refuted == 0
    print(
        f"ACCEPTANCE 5 PASS: {len(scenarios)} scenarios verified, zero refuted, "
        "chain inequality on 100 tuples each"
    )


def _envelope_hypothesis(rep):
    first = rep.hypothesis_results[0]
    assert first.name == "displacement range inside (dom A - dom B) and (ran A + ran B)"
    return first


def test_criterion_6_displacement_range_modes():
    point_cone = normal_cone_operator(Polyhedron.point(Vector.of([0])))
    rep_full_domain = verify_theorem2(identity_operator(1), point_cone, W_FULL_DOMAIN)
    assert rep_full_domain.status == "Verified"
    assert _envelope_hypothesis(rep_full_domain).outcome == "pass"

    box_cone = normal_cone_operator(Polyhedron.box([0, 0], [1, 1]))
    tri_cone = normal_cone_operator(
        Polyhedron.from_v(
            2, vertices=[Vector.of([0, 0]), Vector.of([1, 0]), Vector.of([0, 1])]
        )
    )
    seg_a = normal_cone_operator(Polyhedron.box([-1], [1]))
    seg_b = normal_cone_operator(Polyhedron.box([0], [2]))
    for a, b in ((box_cone, tri_cone), (seg_a, seg_b)):
        rep = verify_theorem2(a, b, W_BOTH)
        assert rep.status == "Verified"
        assert _envelope_hypothesis(rep).outcome == "pass"
    print(
        "ACCEPTANCE 6 PASS: displacement range verified in the full-domain mode and "
        "in two polytope-cone instances, envelope containment exact in every run"
    )


def test_criterion_7_kuhn_tucker_desk_instances():
    full_plane = PolySet.full(2)
    strip = PolySet.of(
        Polyhedron.from_h(
            2,
            [(Vector.of([0, 1]), Q(-1)), (Vector.of([0, -1]), Q(-1))],
        )
    )
    one = identity_operator(1)
    interval_cone = normal_cone_operator(Polyhedron.box([-1], [1]))
    point_cone = normal_cone_operator(Polyhedron.point(Vector.of([0])))
    id_rel = linear_relation_from_matrix(Matrix.identity(1))
    zero_rel = linear_relation_from_matrix(Matrix.of([[0]]))

    instances = (
        ("I", one, one, id_rel, full_plane),
        ("II", point_cone, interval_cone, id_rel, strip),
        ("I", one, interval_cone, zero_rel, strip),
    )
    for variant, a, b, l, expected in instances:
        rep = verify_kt_range(a, b, l, variant)
        assert rep.status == "Verified", (variant, rep.status)
        assert polyset_equal(rep.lhs_set, expected).holds, variant
        assert polyset_equal(rep.rhs_set, expected).holds, variant
    print("ACCEPTANCE 7 PASS: saddle operator ranges exact on three desk instances")


def test_criterion_8_relative_interior_range_identity(pool):
    for index, m in enumerate(pool):
        rep = rint_range_identity(m)
        assert rep.status == "Verified", (index, rep.status)
    print(f"ACCEPTANCE 8 PASS: range identity verified on all {len(pool)} operators")


def test_criterion_9_cli_determinism_and_exit_codes():
    def run(*args):
        proc = subprocess.run(
            [sys.executable, "-m", "monokit", *args],
            capture_output=True,
            env={**os.environ, "NO_COLOR": "1"},
        )
        return proc.returncode, proc.stdout

    args = (
        "--builtin",
        "example3_rotation_normalcone",
        "--format",
        "machine",
        "--seed",
        "7",
    )
    code_a, out_a = run(*args)
    code_b, out_b = run(*args)
    assert code_a == code_b == 0
    assert out_a == out_b

    fixture = lambda name: os.path.join(FIXTURES, name)
    codes = (
        run(fixture("ok.mono"), "--format", "machine", "--seed", "7")[0],
        run(fixture("hypofail.mono"))[0],
        run(fixture("syntax.mono"))[0],
    )
    assert codes == (0, 2, 3)

    file_a = run(fixture("ok.mono"), "--format", "machine", "--seed", "7")
    file_b = run(fixture("ok.mono"), "--format", "machine", "--seed", "7")
    assert file_a == file_b
    print("ACCEPTANCE 9 PASS: byte-identical machine reports, fixture exits 0/2/3")

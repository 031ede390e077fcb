"""Command line behavior: grammar, formats, exit codes, determinism."""

from __future__ import annotations

import os
import subprocess
import sys

import pytest

from monokit.cli import (
    Evaluator,
    emit_polygons,
    exit_code_for,
    main,
    make_document,
    parse_machine,
    parse_polygons,
    parse_scenario,
    print_human,
    print_machine,
    run_scenario_file,
    set_from_text,
    set_to_text,
    vector_from_text,
)
from monokit.errors import InputError
from monokit.linalg import Matrix, Q, Vector
from monokit.operators import Operator, Scenario, apply_operator, normal_cone_operator
from monokit.polyhedra import PolySet, Polyhedron
from monokit.reports import Report
from monokit.theorems import run_builtin

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    return os.path.join(FIXTURES, name)


def run_cli(*args, stdin=b""):
    proc = subprocess.run(
        [sys.executable, "-m", "monokit", *args],
        capture_output=True,
        input=stdin,
        env={**os.environ, "NO_COLOR": "1"},
    )
    return proc.returncode, proc.stdout, proc.stderr


# -- parsing -----------------------------------------------------------------


def test_parse_rotation_line():
    f = parse_scenario(
        "let A = matrix 2 2 [0,-1,1,0]\nverify brezis_haraux(A, A)\n"
    )
    assert len(f.declarations) == 1
    decl = f.declarations[0]
    assert decl.name == "A" and decl.constructor == "matrix"
    ev = Evaluator()
    ev.run_declaration(decl)
    assert ev.env["A"] == Matrix.of([[0, -1], [1, 0]])


def test_parens_and_commas_are_cosmetic():
    a = parse_scenario("let A = matrix(2, 2, [0,-1,1,0])\nverify brezis_haraux(A, A)\n")
    b = parse_scenario("let A = matrix 2 2 [0,-1,1,0]\nverify brezis_haraux A A\n")
    strip = lambda toks: [(t.kind, t.value) for t in toks]
    assert strip(a.declarations[0].args) == strip(b.declarations[0].args)
    assert strip(a.directives[0].args) == strip(b.directives[0].args)


def test_undefined_name_diagnostic():
    with pytest.raises(InputError, match="line 1: undefined name A"):
        parse_scenario("verify theorem1(A)\n")


def test_syntax_error_reports_position():
    with pytest.raises(InputError, match="line 2, col 20: unclosed"):
        parse_scenario("# comment\nlet A = matrix 2 2 [0,-1\nverify theorem1(A)\n")


def test_reserved_words_cannot_be_bound():
    with pytest.raises(InputError, match="reserved"):
        parse_scenario("let sum = identity(1)\nverify rint_identity(sum)\n")


def test_option_lines_need_integers():
    with pytest.raises(InputError, match="nonnegative integer"):
        parse_scenario("option max_dim = 1/2\nverify rint_identity(identity(1))\n")


def test_file_without_directives_rejected():
    with pytest.raises(InputError, match="no verify directive"):
        parse_scenario("let A = identity(2)\n")


def test_nested_constructor_calls():
    f = parse_scenario("verify rint_identity(normal_cone(box([0], [1])))\n")
    ev = Evaluator()
    doc, _ = run_scenario_file(f, None)
    assert doc.entries[0][1].status == "Verified"


def test_scenario_constructor_builds_couples():
    text = (
        "let S = scenario(identity(2), couple, matrix 2 2 [1,0,0,1], identity(2))\n"
        "verify theorem1(S)\n"
    )
    f = parse_scenario(text)
    ev = Evaluator()
    ev.run_declaration(f.declarations[0])
    s = ev.env["S"]
    assert isinstance(s, Scenario) and len(s.couples) == 1


def test_staircase_constructor_with_rays():
    f = parse_scenario(
        "let S = staircase [-1,-1] [0,0] head [-1,0] tail [1,1]\n"
        "verify rint_identity(S)\n"
    )
    ev = Evaluator()
    ev.run_declaration(f.declarations[0])
    s = ev.env["S"]
    assert isinstance(s, Operator) and len(s.graph.pieces) == 3


# -- directive execution ------------------------------------------------------


def run_text(text, seed=None):
    return run_scenario_file(parse_scenario(text), seed)


def test_theorem1_sugar_expands_identity_couple():
    doc, _ = run_text(
        "let A = matrix 2 2 [0,-1,1,0]\n"
        "let B = normal_cone(polyhedron_h 2 eq [0,1] 0)\n"
        "verify theorem1(A, B)\n"
    )
    rep = doc.entries[0][1]
    assert rep.status == "Verified"
    assert set_to_text(rep.lhs_set) == "dim 2: (1,0)==0"
    assert rep.lhs_set == rep.rhs_set


def test_theorem2_custom_mode_requires_declared_w():
    with pytest.raises(InputError, match="undefined name W"):
        parse_scenario("verify theorem2(identity(1), identity(1)) mode=custom w=W\n")


def test_kt_range_requires_variant():
    with pytest.raises(InputError, match="variant=I or variant=II"):
        run_text(
            "let L = linear_relation(matrix 1 1 [1])\n"
            "verify kt_range(identity(1), identity(1), L)\n"
        )


def test_unknown_option_rejected():
    with pytest.raises(InputError, match="unknown option tolerance"):
        run_text("verify rint_identity(identity(1)) tolerance=0\n")


def test_example9_probe_groups():
    doc, _ = run_text(
        "let NC = normal_cone(box([-1], [1]))\n"
        "verify example9(NC, probe, [0], [0], probe, [5], [0])\n"
    )
    rep = doc.entries[0][1]
    assert rep.status == "Verified"
    assert rep.meta["protocol"] == "probe-verified"


def test_expect_failure_marks_report():
    doc, _ = run_text(
        "let A = matrix_op(matrix 2 2 [0,-1,1,0])\n"
        "let B = normal_cone(polyhedron_h 2 eq [0,1] 0)\n"
        "verify brezis_haraux(A, B) expect=failure\n"
    )
    rep = doc.entries[0][1]
    assert rep.status == "HypothesisFailed"
    assert rep.meta["expected_failure"] is True
    assert exit_code_for(doc.entries) == 0


def test_exit_codes_rank_refuted_over_unknown():
    mk = lambda status, **meta: ("x", Report("Theorem1", status=status, meta=dict(meta)))
    assert exit_code_for([mk("Verified")]) == 0
    assert exit_code_for([mk("Unknown"), mk("Refuted")]) == 1
    assert exit_code_for([mk("HypothesisFailed"), mk("Verified")]) == 2
    assert exit_code_for([mk("Refuted", expected_failure=True)]) == 0
    assert exit_code_for([mk("Unknown", expected_failure=True)]) == 2


# -- set and report serialization ----------------------------------------------


def test_set_text_round_trip():
    s = PolySet.make(
        2,
        [
            Polyhedron.box([0, 0], [1, 1]),
            Polyhedron.from_h(2, [], [(Vector.of([1, 0]), Q(3))]),
        ],
    )
    assert set_from_text(set_to_text(s)) == s
    assert set_from_text("dim 3: empty") == PolySet.empty(3)
    assert set_from_text("dim 2: all") == PolySet.full(2)


def test_vector_text_round_trip():
    v = Vector.of([Q(1), Q(-1, 2)])
    assert vector_from_text(str(v)) == v


def test_machine_document_round_trip_over_builtins():
    names = (
        "example3_rotation_normalcone",
        "example3_brezis_haraux_contrast",
        "kt_variant_ii_point_and_interval",
        "lemma2_interval_refinement",
        "example9_interval_normalcone",
        "theorem2_mode_i_interval_cones",
    )
    entries = [(f"builtin:{n}", run_builtin(n)) for n in names]
    doc = make_document(entries, 7)
    text = print_machine(doc)
    again = parse_machine(text)
    assert again == doc
    assert print_machine(again) == text


def test_machine_format_carries_no_timing():
    doc = make_document([("b", run_builtin("example3_rotation_normalcone"))], None)
    text = print_machine(doc)
    assert "ms" not in text and "time" not in text


def test_human_format_mentions_status_and_witness():
    doc = make_document([("b", run_builtin("example3_brezis_haraux_contrast"))], None)
    text = print_human(doc)
    assert "HypothesisFailed" in text
    assert "EXPECTED-FAILURE" in text
    assert "witness" in text


# -- polygon emission -----------------------------------------------------------


def test_unit_square_emits_ccw():
    text = emit_polygons([("square", PolySet.of(Polyhedron.box([0, 0], [1, 1])))])
    parsed = parse_polygons(text)
    verts = parsed[0][1][0]["vertices"]
    assert [tuple(v.entries) for v in verts] == [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_vertical_axis_emits_clipped_segment():
    axis = PolySet.of(Polyhedron.from_h(2, [], [(Vector.of([1, 0]), Q(0))]))
    text = emit_polygons([("axis", axis)])
    parsed = parse_polygons(text)
    piece = parsed[0][1][0]
    assert [tuple(v.entries) for v in piece["vertices"]] == [(0, 0)]
    assert [tuple(v.entries) for v in piece["lines"]] == [(0, 1)]
    assert [tuple(v.entries) for v in piece["clipped"]] == [(0, -10), (0, 10)]


def test_normal_fan_of_square_has_nine_records():
    nc = normal_cone_operator(Polyhedron.box([0, 0], [1, 1]))
    half = Q(1, 2)
    reps = [
        (0, 0), (1, 0), (1, 1), (0, 1),
        (half, 0), (1, half), (half, 1), (0, half), (half, half),
    ]
    named = [
        (f"cone{i}", apply_operator(nc, Vector.of([Q(a), Q(b)])))
        for i, (a, b) in enumerate(reps)
    ]
    parsed = parse_polygons(emit_polygons(named))
    assert len(parsed) == 9
    ray_counts = sorted(len(p[1][0]["rays"]) for p in parsed)
    assert ray_counts == [0, 1, 1, 1, 1, 2, 2, 2, 2]


def test_polygon_rationals_reparse_exactly():
    tri = Polyhedron.from_v(
        2, vertices=[Vector.of([0, 0]), Vector.of([Q(1, 3), 0]), Vector.of([0, Q(2, 7)])]
    )
    parsed = parse_polygons(emit_polygons([("tri", PolySet.of(tri))]))
    got = {tuple(v.entries) for v in parsed[0][1][0]["vertices"]}
    assert got == {(0, 0), (Q(1, 3), 0), (0, Q(2, 7))}


def test_polygons_reject_wrong_dimension():
    with pytest.raises(InputError, match="2-dimensional"):
        emit_polygons([("seg", PolySet.of(Polyhedron.box([0], [1])))])


def test_decimal_rendering_is_17_significant_digits():
    third = PolySet.of(Polyhedron.point(Vector.of([Q(1, 3), Q(0)])))
    text = emit_polygons([("p", third)])
    assert "approx=(0.33333333333333333,0)" in text


# -- the executable -------------------------------------------------------------


def test_fixture_exit_codes():
    assert run_cli(fixture("ok.mono"))[0] == 0
    assert run_cli(fixture("hypofail.mono"))[0] == 2
    code, _, err = run_cli(fixture("syntax.mono"))
    assert code == 3
    assert b"unclosed" in err


def test_repeated_machine_runs_are_byte_identical():
    args = (
        "--builtin",
        "example3_rotation_normalcone",
        "--format",
        "machine",
        "--seed",
        "7",
    )
    first = run_cli(*args)
    second = run_cli(*args)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert b"monokit-report/1" in first[1]


def test_scenario_file_machine_runs_are_byte_identical():
    args = (fixture("ok.mono"), "--format", "machine", "--seed", "11")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_list_builtins_exits_zero_and_names_catalog():
    code, out, _ = run_cli("--list-builtins")
    assert code == 0
    assert b"example3_rotation_normalcone" in out
    assert b"EXPECTED FAILURE" in out


def test_unknown_builtin_exits_three():
    code, _, err = run_cli("--builtin", "no_such_thing")
    assert code == 3
    assert b"unknown builtin" in err


def test_contrast_builtin_counts_as_expected():
    code, out, _ = run_cli("--builtin", "example3_brezis_haraux_contrast")
    assert code == 0
    assert b"EXPECTED-FAILURE" in out


def test_flag_collision_is_input_error():
    code, _, err = run_cli(fixture("ok.mono"), "--builtin", "x")
    assert code == 3
    assert b"exactly one" in err


def test_missing_file_is_input_error():
    code, _, err = run_cli("/nonexistent/path.mono")
    assert code == 3
    assert b"cannot read" in err


def test_emit_polygons_flag_writes_file(tmp_path):
    target = tmp_path / "geometry.txt"
    code, _, _ = run_cli(
        "--builtin", "example3_rotation_normalcone", "--emit-polygons", str(target)
    )
    assert code == 0
    parsed = parse_polygons(target.read_text())
    assert [name for name, _ in parsed] == ["r0.lhs", "r0.rhs"]


def test_main_in_process_matches_subprocess(capsys):
    code = main(["--builtin", "example3_rotation_normalcone", "--format", "machine"])
    captured = capsys.readouterr()
    assert code == 0
    sub_code, sub_out, _ = run_cli(
        "--builtin", "example3_rotation_normalcone", "--format", "machine"
    )
    assert sub_code == 0
    assert captured.out.encode() == sub_out


def test_file_options_apply_and_flags_win(tmp_path):
    target = tmp_path / "capped.mono"
    target.write_text(
        "option max_pieces = 1\n"
        "let S = staircase [-1,-1] [0,0] [1,1] head [-1,0] tail [1,0]\n"
        "verify rint_identity(S)\n"
    )
    code, _, err = run_cli(str(target))
    assert code == 3
    assert b"pieces exceed" in err
    code, out, _ = run_cli(str(target), "--max-pieces", "64", "--format", "machine")
    assert code == 0
    assert b"cap name=max_pieces value=64" in out


def test_scenario_on_stdin():
    code, out, _ = run_cli("-", "--format", "machine", stdin=open(fixture("ok.mono"), "rb").read())
    assert code == 0
    assert b"status value=Verified" in out

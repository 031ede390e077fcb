"""Exact linear algebra: vectors, matrices, subspaces, solvers."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from monokit import InputError, Matrix, Q, Subspace, Vector, as_q
from monokit.linalg import (
    affine_hull_points,
    kernel,
    orthogonal_complement,
    primitive,
    q_str,
    rref_rows,
    sign_normalized,
    solve_linear,
)


def test_as_q_accepts_ints_rationals_and_strings():
    assert as_q(3) == 3
    assert as_q(Q(1, 2)) * 2 == 1
    assert as_q("7/3") == Q(7, 3)


def test_as_q_rejects_floats():
    with pytest.raises(InputError):
        as_q(0.5)
    with pytest.raises(InputError):
        Vector.of([1, 2.0])


def test_q_str_formats_integers_without_denominator():
    assert q_str(Q(4, 2)) == "2"
    assert q_str(Q(-3, 6)) == "-1/2"


def test_vector_arithmetic():
    a = Vector.of([1, 2, 3])
    b = Vector.of([Q(1, 2), 0, -1])
    assert (a + b).entries == (Q(3, 2), 2, 2)
    assert (a - b).entries == (Q(1, 2), 2, 4)
    assert a.scale(Q(1, 3)).entries == (Q(1, 3), Q(2, 3), 1)
    assert a.dot(b) == Q(1, 2) - 3
    assert (-b).entries == (Q(-1, 2), 0, 1)


def test_vector_blocks_and_concat():
    a = Vector.of([1, 2, 3, 4])
    assert a.block(0, 2).entries == (1, 2)
    assert a.block(2, 4).entries == (3, 4)
    assert a.block(0, 2).concat(a.block(2, 4)) == a


def test_vector_str_uses_parentheses():
    assert str(Vector.of([1, Q(-1, 2)])) == "(1,-1/2)"


def test_primitive_clears_denominators_and_content():
    assert primitive(Vector.of([Q(2, 3), Q(-4, 3)])).entries == (1, -2)
    assert primitive(Vector.zero(3)).entries == (0, 0, 0)


def test_sign_normalized_flips_to_positive_leading_entry():
    v = Vector.of([0, -2, 4])
    assert sign_normalized(v).entries == (0, 2, -4)
    assert sign_normalized(-v) == sign_normalized(v)


def test_matrix_apply_and_mul():
    m = Matrix.of([[0, -1], [1, 0]])
    assert m.apply(Vector.of([3, 5])).entries == (-5, 3)
    assert m.mul(m).apply(Vector.of([3, 5])).entries == (-3, -5)
    assert m.transpose().apply(Vector.of([3, 5])).entries == (5, -3)


def test_matrix_inverse():
    m = Matrix.of([[1, 2], [3, 4]])
    inv = m.inverse()
    assert inv is not None
    assert m.mul(inv) == Matrix.identity(2)
    assert Matrix.of([[1, 2], [2, 4]]).inverse() is None


def test_matrix_block_diag():
    m = Matrix.block_diag(Matrix.identity(1), Matrix.of([[2]]))
    assert m.apply(Vector.of([5, 7])).entries == (5, 14)


def test_rref_rows_pivots():
    rows, pivots = rref_rows([[0, 2, 4], [1, 1, 1]])
    assert pivots == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 2]]


def test_subspace_span_and_membership():
    s = Subspace.span(3, [Vector.of([1, 1, 0]), Vector.of([2, 2, 0]), Vector.of([0, 0, 1])])
    assert s.dim == 2
    assert s.contains(Vector.of([5, 5, -3]))
    assert not s.contains(Vector.of([1, 0, 0]))
    assert s.reduce(Vector.of([1, 1, 7])).entries == (0, 0, 0)


def test_subspace_contains_subspace():
    big = Subspace.full(3)
    small = Subspace.span(3, [Vector.of([1, 2, 3])])
    assert big.contains_subspace(small)
    assert not small.contains_subspace(big)


def test_solve_linear_unique():
    a = Matrix.of([[2, 0], [0, 3]])
    sol = solve_linear(a, Vector.of([1, 1]))
    assert sol is not None
    x, hom = sol
    assert x.entries == (Q(1, 2), Q(1, 3))
    assert hom.dim == 0


def test_solve_linear_underdetermined_and_inconsistent():
    a = Matrix.of([[1, 1]])
    sol = solve_linear(a, Vector.of([2]))
    x, hom = sol
    assert a.apply(x).entries == (2,)
    assert hom.dim == 1
    assert hom.contains(Vector.of([1, -1]))
    assert solve_linear(Matrix.of([[1, 1], [1, 1]]), Vector.of([0, 1])) is None


def test_kernel():
    k = kernel(Matrix.of([[1, 2, 3]]))
    assert k.dim == 2
    for b in k.basis:
        assert Vector.of([1, 2, 3]).dot(b) == 0


def test_orthogonal_complement_dimensions():
    s = Subspace.span(4, [Vector.of([1, 0, 1, 0]), Vector.of([0, 1, 0, 1])])
    c = orthogonal_complement(s)
    assert c.dim == 2
    for u in s.basis:
        for v in c.basis:
            assert u.dot(v) == 0


def test_affine_hull_points():
    base, direction = affine_hull_points(
        [Vector.of([1, 1]), Vector.of([2, 2]), Vector.of([3, 3])]
    )
    assert direction.dim == 1
    assert direction.contains(Vector.of([1, 1]))
    assert direction.contains(base - Vector.of([1, 1]))


rationals = st.builds(
    Q,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=9),
)


@given(st.lists(rationals, min_size=2, max_size=4))
def test_primitive_is_idempotent_and_parallel(entries):
    v = Vector.of(entries)
    p = primitive(v)
    assert primitive(p) == p
    if not v.is_zero:
        # p = v * positive rational
        ratio = None
        for a, b in zip(p.entries, v.entries):
            if b != 0:
                ratio = a / b
                break
        assert ratio is not None and ratio > 0
        assert v.scale(ratio) == p


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=3))
def test_rref_is_canonical_under_row_shuffles(rows):
    fwd, _ = rref_rows(rows)
    rev, _ = rref_rows(list(reversed(rows)))
    assert fwd == rev

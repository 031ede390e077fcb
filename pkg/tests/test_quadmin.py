"""Exact pairing minimization and the PSD certificate."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from monokit import InputError, Matrix, Q, Vector
from monokit.polyhedra import Polyhedron, sample_point
from monokit.quadmin import (
    PairingMin,
    descend_to_negative,
    in_range,
    pairing_min,
    pairing_min_piece,
    psd_certificate,
    swap_matrix,
)


def graph_piece(pairs, rays=(), lines=()):
    """Piece of R^(2n) from (x, u) generator pairs."""
    verts = [Vector.of(list(x) + list(u)) for x, u in pairs]
    rs = [Vector.of(list(x) + list(u)) for x, u in rays]
    ls = [Vector.of(list(x) + list(u)) for x, u in lines]
    dim = verts[0].dim if verts else (rs + ls)[0].dim
    return Polyhedron.from_v(dim, vertices=verts, rays=rs, lines=ls)


def pairing_value(y, z, w):
    n = z.dim
    return (y.block(0, n) - z).dot(y.block(n, 2 * n) - w)


def test_identity_graph_pairing_is_attained_at_zero():
    # gra(Id) on R: y = (x, x); <x - 0, x - 0> has minimum 0.
    piece = graph_piece([((0,), (0,))], lines=[((1,), (1,))])
    r = pairing_min_piece(piece, Vector.of([0]), Vector.of([0]))
    assert r.status == "Attained"
    assert r.value == 0
    assert pairing_value(r.point, Vector.of([0]), Vector.of([0])) == 0


def test_negated_identity_graph_is_unbounded():
    piece = graph_piece([((0,), (0,))], lines=[((1,), (-1,))])
    r = pairing_min_piece(piece, Vector.of([0]), Vector.of([0]))
    assert r.status == "Unbounded"
    h = swap_matrix(1)
    c = Vector.zero(2)
    neg = descend_to_negative(r, h, c, Q(0))
    assert pairing_value(neg, Vector.of([0]), Vector.of([0])) < 0


def test_rotation_graph_attained_at_origin_probe():
    # gra of the quarter-turn (x1,x2) -> (-x2,x1); skew, so pairing >= 0 at z=w=0.
    piece = graph_piece(
        [((0, 0), (0, 0))],
        lines=[((1, 0), (0, 1)), ((0, 1), (-1, 0))],
    )
    r = pairing_min_piece(piece, Vector.zero(2), Vector.zero(2))
    assert r.status == "Attained"
    assert r.value == 0


def test_rotation_graph_unbounded_at_shifted_probe():
    # Probe z=(1,0), w=(0,0): <x - z, u> = -x1*x2... decreases along x=(t,0).
    piece = graph_piece(
        [((0, 0), (0, 0))],
        lines=[((1, 0), (0, 1)), ((0, 1), (-1, 0))],
    )
    r = pairing_min_piece(piece, Vector.of([1, 0]), Vector.zero(2))
    assert r.status == "Unbounded"
    h = swap_matrix(2)
    c = (-Vector.zero(2)).concat(-Vector.of([1, 0]))
    neg = descend_to_negative(r, h, c, Q(0))
    assert pairing_value(neg, Vector.of([1, 0]), Vector.zero(2)) < 0


def test_box_graph_shifted_probe_attained_on_face():
    # gra over the square [1,3]^2 with constant value u=(1,1); z=w=(0,0):
    # minimize <x, (1,1)> = x1 + x2 over the square: min 2 at (1,1).
    piece = graph_piece(
        [((1, 1), (1, 1)), ((1, 3), (1, 1)), ((3, 1), (1, 1)), ((3, 3), (1, 1))]
    )
    r = pairing_min_piece(piece, Vector.zero(2), Vector.zero(2))
    assert r.status == "Attained"
    assert r.value == 2
    assert r.point.block(0, 2).entries == (1, 1)


def test_interior_stationary_minimum_on_segment():
    # Segment from (0,0) to (1,1) in gra coords (x,u) paired against
    # z=1/2, w=1/4: F(t) = (t-1/2)(t-1/4) dips negative strictly inside.
    piece = graph_piece([((0,), (0,)), ((1,), (1,))])
    r = pairing_min_piece(piece, Vector.of([Q(1, 2)]), Vector.of([Q(1, 4)]))
    assert r.status == "Attained"
    assert r.value == Q(-1, 64)
    assert r.point.entries == (Q(3, 8), Q(3, 8))


def test_pairing_min_union_values_exactly():
    a = graph_piece([((0,), (0,))])
    b = graph_piece([((3,), (3,))])
    r = pairing_min([a, b], Vector.of([1]), Vector.of([0]))
    # a: (0-1)(0-0) = 0;  b: (3-1)(3-0) = 6
    assert r.status == "Attained" and r.value == 0
    r2 = pairing_min([b], Vector.of([1]), Vector.of([0]))
    assert r2.value == 6


def test_pairing_min_rejects_empty_union_and_bad_dims():
    with pytest.raises(InputError):
        pairing_min([], Vector.of([0]), Vector.of([0]))
    piece = graph_piece([((0,), (0,))])
    with pytest.raises(InputError):
        pairing_min_piece(piece, Vector.of([0, 0]), Vector.of([0, 0]))


def test_unbounded_ray_with_positive_quadratic_but_negative_slope():
    # Ray direction (1, 0): quadratic part 0, slope from c decides.
    # gra = {(t, 1) : t >= 0}; probe z=1, w=2: F = (t-1)(1-2) = 1-t -> -inf.
    piece = graph_piece([((0,), (1,))], rays=[((1,), (0,))])
    r = pairing_min_piece(piece, Vector.of([1]), Vector.of([2]))
    assert r.status == "Unbounded"
    assert r.direction.entries[0] > 0


def test_psd_certificate_accepts_and_rejects():
    ok, w = psd_certificate(Matrix.of([[2, -1], [-1, 2]]))
    assert ok and w is None
    ok, w = psd_certificate(Matrix.of([[1, 2], [2, 1]]))
    assert not ok
    form = w.dot(Matrix.of([[1, 2], [2, 1]]).apply(w))
    assert form < 0


def test_psd_certificate_zero_diagonal_off_diagonal_witness():
    m = Matrix.of([[0, 1], [1, 0]])
    ok, w = psd_certificate(m)
    assert not ok
    assert w.dot(m.apply(w)) < 0


def test_psd_certificate_semidefinite_boundary():
    ok, w = psd_certificate(Matrix.of([[1, 1], [1, 1]]))
    assert ok and w is None
    ok, _ = psd_certificate(Matrix.zeros(3, 3))
    assert ok


def test_in_range():
    m = Matrix.of([[1, 0], [0, 0]])
    assert in_range(m, Vector.of([5, 0]))
    assert not in_range(m, Vector.of([0, 1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 30))
def test_attained_value_is_a_true_lower_bound_on_samples(seed):
    """Random 1-d staircase piece: report minimum, then sample and compare."""
    rng = random.Random(seed)
    x0 = Q(rng.randint(-3, 3))
    u0 = Q(rng.randint(-3, 3))
    x1 = x0 + rng.randint(1, 3)
    u1 = u0 + rng.randint(0, 3)
    piece = graph_piece([((x0,), (u0,)), ((x1,), (u1,))])
    z = Vector.of([Q(rng.randint(-2, 2), rng.randint(1, 3))])
    w = Vector.of([Q(rng.randint(-2, 2), rng.randint(1, 3))])
    r = pairing_min_piece(piece, z, w)
    assert r.status == "Attained"
    for _ in range(25):
        y = sample_point(piece, rng)
        assert pairing_value(y, z, w) >= r.value
    assert pairing_value(r.point, z, w) == r.value


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 30))
def test_unbounded_certificates_strictly_descend(seed):
    """Graphs with a decreasing line are unbounded at every probe."""
    rng = random.Random(seed)
    slope = -Q(rng.randint(1, 4), rng.randint(1, 3))
    piece = graph_piece([((0,), (0,))], lines=[((1,), (slope,))])
    z = Vector.of([Q(rng.randint(-2, 2))])
    w = Vector.of([Q(rng.randint(-2, 2))])
    r = pairing_min_piece(piece, z, w)
    assert r.status == "Unbounded"
    base, d = r.point, r.direction
    # the raw certificate promises eventual descent without bound; the
    # parabola may first rise when the initial slope points uphill
    vals = [pairing_value(base + d.scale(Q(t)), z, w) for t in (4096, 8192, 16384)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < pairing_value(base, z, w)

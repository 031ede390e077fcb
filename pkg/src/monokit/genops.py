"""Seeded generation of maximally monotone operators and test scenarios.

Everything here is deterministic given the seed.  The constructions are
chosen so the generated operators are maximally monotone by design:
piecewise linear staircases whose graphs run off to infinity at both
ends, normal cones of nonempty polyhedra, linear operators with positive
semidefinite symmetric part, and products and congruence transforms of
these.  The analysis checks still verify the properties independently;
the generator never labels an operator beyond how it was built.
"""

from __future__ import annotations

import random
from typing import Optional

from .errors import InputError
from .linalg import Matrix, Q, Vector
from .operators import (
    LinearRelation,
    Operator,
    Scenario,
    congruence_transform,
    linear_relation_from_matrix,
    make_operator,
    matrix_operator,
    normal_cone_operator,
    product_operator,
    pwl1d_operator,
)
from .polyhedra import Polyhedron, sample_point


def _small_q(rng: random.Random):
    return Q(rng.randint(-3, 3), rng.choice([1, 1, 2]))


def random_staircase(rng: random.Random) -> Operator:
    """A maximal monotone piecewise linear graph on the line.

    A short increasing chain of breakpoints with weakly decreasing head
    and weakly increasing tail rays; the two rays push the graph to
    infinity on both sides, which is what maximality needs.
    """
    x = Q(rng.randint(-2, 2))
    u = Q(rng.randint(-2, 2))
    points = [(x, u)]
    for _ in range(rng.randint(1, 3)):
        dx, du = rng.choice([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, 3)])
        x, u = x + Q(dx), u + Q(du)
        points.append((x, u))
    head = rng.choice([(-1, 0), (0, -1), (-1, -1), (-2, -1), (-1, -2)])
    tail = rng.choice([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
    return pwl1d_operator(points, head=head, tail=tail)


def random_box(rng: random.Random, dim: int) -> Polyhedron:
    lo = [Q(rng.randint(-2, 0)) for _ in range(dim)]
    hi = [l + Q(rng.randint(1, 3)) for l in lo]
    return Polyhedron.box(lo, hi)


def random_box_normal_cone(rng: random.Random, dim: int) -> Operator:
    return normal_cone_operator(random_box(rng, dim))


def random_triangle_normal_cone(rng: random.Random) -> Operator:
    """Normal cone of a nondegenerate triangle in the plane."""
    while True:
        pts = [Vector.of([Q(rng.randint(-3, 3)), Q(rng.randint(-3, 3))]) for _ in range(3)]
        e1, e2 = pts[1] - pts[0], pts[2] - pts[0]
        if e1[0] * e2[1] - e1[1] * e2[0] != 0:
            break
    return normal_cone_operator(Polyhedron.from_v(2, pts, [], []))


def random_psd_matrix(rng: random.Random, dim: int) -> Matrix:
    """B^T B for a small random integer matrix B."""
    b = Matrix.of([[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)])
    return b.transpose().mul(b)


def random_monotone_matrix(rng: random.Random, dim: int) -> Matrix:
    """Positive semidefinite symmetric part plus a skew perturbation."""
    rows = [[Q(0)] * dim for _ in range(dim)]
    skew = [[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)]
    psd = random_psd_matrix(rng, dim)
    for i in range(dim):
        for j in range(dim):
            s = Q(skew[i][j] - skew[j][i])
            rows[i][j] = psd.row(i)[j] + s
    return Matrix.of(rows)


def random_shear(rng: random.Random, dim: int) -> Matrix:
    """An invertible integer matrix built from one or two shears."""
    m = Matrix.identity(dim)
    for _ in range(rng.randint(1, 2)):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        shear = [[Q(1) if a == b else Q(0) for b in range(dim)] for a in range(dim)]
        shear[i][j] = Q(rng.choice([-1, 1]))
        m = Matrix.of(shear).mul(m)
    return m


def random_operator_1d(rng: random.Random) -> Operator:
    kind = rng.randrange(4)
    if kind == 0:
        return random_staircase(rng)
    if kind == 1:
        return random_box_normal_cone(rng, 1)
    if kind == 2:
        return matrix_operator(Matrix.of([[Q(rng.randint(0, 3))]]))
    return congruence_transform(random_staircase(rng), Matrix.of([[Q(rng.choice([1, 2, 3]))]]))


def random_operator_2d(rng: random.Random) -> Operator:
    kind = rng.randrange(5)
    if kind == 0:
        return random_box_normal_cone(rng, 2)
    if kind == 1:
        return random_triangle_normal_cone(rng)
    if kind == 2:
        return matrix_operator(random_monotone_matrix(rng, 2))
    if kind == 3:
        return product_operator([random_operator_1d(rng), random_operator_1d(rng)])
    return congruence_transform(
        product_operator([random_staircase(rng), random_staircase(rng)]),
        random_shear(rng, 2),
    )


def random_operator_3d(rng: random.Random) -> Operator:
    kind = rng.randrange(3)
    if kind == 0:
        return matrix_operator(random_monotone_matrix(rng, 3))
    if kind == 1:
        return product_operator([random_staircase(rng), random_box_normal_cone(rng, 2)])
    return product_operator(
        [random_box_normal_cone(rng, 1), random_staircase(rng), random_staircase(rng)]
    )


def random_maximal_operator(rng: random.Random, dim: int) -> Operator:
    if dim == 1:
        return random_operator_1d(rng)
    if dim == 2:
        return random_operator_2d(rng)
    if dim == 3:
        return random_operator_3d(rng)
    raise InputError(f"no generator for dimension {dim}")


def operator_pool(seed: int, count: int, dims=(1, 2, 3)) -> list:
    """A deterministic pool of maximal monotone operators cycling dims."""
    rng = random.Random(seed)
    pool = []
    for i in range(count):
        pool.append(random_maximal_operator(rng, dims[i % len(dims)]))
    return pool


def drop_random_piece(rng: random.Random, m: Operator) -> Optional[Operator]:
    """Remove one piece of a multi-piece graph, producing a strictly
    smaller monotone operator; returns None for single-piece graphs."""
    pieces = m.graph.pieces
    if len(pieces) < 2:
        return None
    drop = rng.randrange(len(pieces))
    remaining = [p for i, p in enumerate(pieces) if i != drop]
    return make_operator(m.dim_in, m.dim_out, remaining)


def sample_graph_points(m: Operator, rng: random.Random, count: int) -> list:
    """Deterministic graph samples, cycling through the pieces."""
    pieces = m.graph.pieces
    if not pieces:
        raise InputError("cannot sample an empty graph")
    return [sample_point(pieces[i % len(pieces)], rng) for i in range(count)]


def random_scenario(rng: random.Random) -> Scenario:
    """A structured-sum scenario whose hypotheses certify exactly.

    The outer operator is any generated maximal monotone operator; each
    couple uses a matrix linear map and an inner operator with a linear
    graph and positive semidefinite symmetric part, whose three-star
    property the subspace tier proves outright.  The inner operators have
    full domain, so the composite stays maximal.
    """
    n = rng.choice([1, 1, 2])
    a = random_maximal_operator(rng, n)
    couples = []
    for _ in range(rng.randint(1, 2)):
        m = rng.choice([1, 2])
        lmat = Matrix.of([[Q(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)])
        b = matrix_operator(random_psd_matrix(rng, m))
        couples.append((linear_relation_from_matrix(lmat), b))
    return Scenario(a, couples)


def scenario_pool(seed: int, count: int) -> list:
    rng = random.Random(seed)
    return [random_scenario(rng) for _ in range(count)]

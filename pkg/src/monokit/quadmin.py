"""Exact minimization of the split pairing <y_x - z, y_u - w> over polyhedra.

The objective is the indefinite quadratic F(y) = 1/2 y^T H y + <c, y> + k with
H the block swap matrix, c = (-w, -z) and k = <z, w>.  Over a polyhedron the
infimum is either minus infinity or attained (a classical fact for quadratics
with polyhedral feasible sets), and both cases admit finite certificates:

* unboundedness is witnessed by a feasible point together with a recession
  direction along which F decreases without bound;
* attainment is witnessed by a face of the piece whose affine hull contains a
  stationary point of F inside the face.

Unboundedness detection runs on the recession cone.  The quadratic part q is
evaluated through the Gram matrix of the cone generators; q takes a negative
value on the cone exactly when that Gram matrix fails to be copositive, which
is decided exactly by minimizing over the probability simplex with support
enumeration.  If q is nonnegative, every zero direction of q (computed per
support through kernel cones) still needs a nonnegative linear slope at every
vertex; a violation yields a linear descent ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .dd import dd_cone
from .errors import InputError, InternalCheckError
from .linalg import Matrix, Q, QONE, QZERO, Subspace, Vector, primitive, solve_linear
from .polyhedra import (
    HRep,
    Polyhedron,
    VRep,
    faces,
    intersect,
    rel_interior_point,
)


@dataclass(frozen=True)
class PairingMin:
    """Outcome of minimizing the pairing over one piece or a union.

    status is "Attained" (value and point set) or "Unbounded" (point is a
    feasible base point and direction a recession direction of descent).
    """

    status: str
    value: Optional[object] = None
    point: Optional[Vector] = None
    direction: Optional[Vector] = None


def swap_matrix(n: int) -> Matrix:
    rows = []
    for i in range(2 * n):
        j = i + n if i < n else i - n
        rows.append(Vector.unit(2 * n, j).entries)
    return Matrix.of(rows)


def _objective(h: Matrix, c: Vector, k, y: Vector):
    return Q(1, 2) * y.dot(h.apply(y)) + c.dot(y) + k


def _quad(h: Matrix, d: Vector):
    return Q(1, 2) * d.dot(h.apply(d))


def _slope(h: Matrix, c: Vector, y: Vector, d: Vector):
    return d.dot(h.apply(y)) + c.dot(d)


def _gram(h: Matrix, gens: list) -> list:
    m = len(gens)
    hg = [h.apply(g) for g in gens]
    return [[Q(1, 2) * gens[i].dot(hg[j]) for j in range(m)] for i in range(m)]


def _simplex_quad_min(g: list) -> tuple:
    """Exact min of mu^T G mu over the probability simplex.

    Returns (value, mu) with mu a minimizer as a Vector.  Enumerates supports:
    the minimizer is interior to the face spanned by its support, where the
    gradient is constant across the support (KKT), so each support contributes
    a linear system; feasibility of its solution set against mu >= 0 is a
    small polyhedron emptiness question.
    """
    m = len(g)
    best = None
    for size in range(1, m + 1):
        for support in combinations(range(m), size):
            # variables: mu over support, then lambda
            eq_rows = []
            rhs = []
            for i in support:
                eq_rows.append([g[i][j] for j in support] + [-QONE])
                rhs.append(QZERO)
            eq_rows.append([QONE] * size + [QZERO])
            rhs.append(QONE)
            eqs = [(Vector.of(r), b) for r, b in zip(eq_rows, rhs)]
            ineqs = [(Vector.unit(size + 1, i), QZERO) for i in range(size)]
            region = Polyhedron(size + 1, h=HRep(size + 1, tuple(ineqs), tuple(eqs)))
            if region.is_empty:
                continue
            pt = rel_interior_point(region)
            lam = pt[size]
            if best is None or lam < best[0]:
                mu = [QZERO] * m
                for idx, i in enumerate(support):
                    mu[i] = pt[idx]
                best = (lam, Vector.of(mu))
    if best is None:  # pragma: no cover - the singleton supports always solve
        raise InternalCheckError("simplex minimization found no stationary support")
    return best


def _zero_directions(h: Matrix, gens: list, gram: list) -> list:
    """Generators of {d in cone(gens) : q(d) = 0}, given q >= 0 on the cone.

    For each support S, the zero set with that support is the image of
    ker(G_S) intersected with the nonnegative orthant; its extreme rays are
    computed by double description in mu-space and mapped back.
    """
    m = len(gens)
    out = {}
    for size in range(1, m + 1):
        for support in combinations(range(m), size):
            eqs = [Vector.of([gram[i][j] for j in support]) for i in support]
            ineqs = [Vector.unit(size, i) for i in range(size)]
            lines, rays = dd_cone(size, eqs, ineqs)
            if lines:  # pragma: no cover - mu >= 0 keeps the cone pointed
                raise InternalCheckError("unexpected lineality in a zero-direction cone")
            for r in rays:
                d = Vector.zero(gens[0].dim)
                for idx, i in enumerate(support):
                    d = d + gens[i].scale(r[idx])
                if d.is_zero:
                    continue
                d = primitive(d)
                if _quad(h, d) != 0:
                    continue  # kernel of the Gram slice, but not of q itself
                out.setdefault(d.entries, d)
    return list(out.values())


def _affine_subspace_poly(dim: int, base: Vector, directions: list) -> Polyhedron:
    dirs = [d for d in directions if not d.is_zero]
    return Polyhedron(dim, v=VRep(dim, (base,), (), tuple(dirs)))


def _min_over_faces(piece: Polyhedron, h: Matrix, c: Vector, k) -> tuple:
    """Exact attained minimum via face-stationary enumeration.

    The minimizer lies in the relative interior of some face, where the
    gradient of F is orthogonal to the face direction space; each face thus
    contributes the stationary set of F on its affine hull, clipped back to
    the face.  F is constant on each stationary set.
    """
    best = None
    for face in faces(piece):
        fp = face.poly
        base = fp.v.vertices[0]
        dirs = [v - base for v in fp.v.vertices[1:]] + list(fp.v.rays) + list(fp.v.lines)
        span = Subspace.span(piece.ambient_dim, dirs)
        nbasis = span.basis
        if not nbasis:
            val = _objective(h, c, k, base)
            if best is None or val < best[0]:
                best = (val, base)
            continue
        nmat = Matrix.from_columns(nbasis)
        nh = nmat.transpose().mul(h.mul(nmat))
        rhs = nmat.transpose().apply(h.apply(base) + c).scale(Q(-1))
        sol = solve_linear(nh, rhs)
        if sol is None:
            continue
        t0, ker = sol
        y0 = base + nmat.apply(t0)
        lines = [nmat.apply(kv) for kv in ker.basis]
        stat = _affine_subspace_poly(piece.ambient_dim, y0, lines)
        meet = intersect(fp, stat)
        if meet.is_empty:
            continue
        pt = rel_interior_point(meet)
        val = _objective(h, c, k, pt)
        if best is None or val < best[0]:
            best = (val, pt)
    if best is None:  # pragma: no cover - the whole piece is always a face
        raise InternalCheckError("face enumeration produced no candidate minimum")
    return best


def coordinate_blocks(pieces, n: int) -> list:
    """Partition 2n coordinates into blocks independent across the pieces.

    Coordinates i and n+i are always tied together because the objective
    couples them; beyond that, two coordinates share a block when some
    constraint of some piece mentions both.  Disjoint blocks make every
    piece a coordinate product and the objective a sum over blocks, so
    minimization factorizes and face enumeration stays small.
    """
    parent = list(range(2 * n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    for i in range(n):
        union(i, n + i)
    for piece in pieces:
        h = piece.h
        for a, _ in tuple(h.inequalities) + tuple(h.equalities):
            support = [i for i, e in enumerate(a.entries) if e != 0]
            for i in support[1:]:
                union(support[0], i)
    groups = {}
    for i in range(2 * n):
        groups.setdefault(find(i), []).append(i)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def restrict_to_block(piece: Polyhedron, coords) -> Polyhedron:
    """Project a coordinate-product piece onto one block of coordinates."""
    keep = set(coords)
    ineqs = []
    eqs = []
    h = piece.h
    for target, source in ((ineqs, h.inequalities), (eqs, h.equalities)):
        for a, b in source:
            support = [i for i, e in enumerate(a.entries) if e != 0]
            if support and support[0] in keep:
                target.append((Vector.of([a[c] for c in coords]), b))
    return Polyhedron.from_h(len(coords), ineqs, eqs)


def _combine_block_results(n: int, results: list) -> PairingMin:
    """Assemble per-block outcomes into one result on the full space.

    The base point concatenates the per-block points; an unbounded block
    contributes its descent direction padded with zeros, which still
    descends because the objective is a sum over blocks.
    """
    point = [QZERO] * (2 * n)
    for coords, r in results:
        for idx, cglob in enumerate(coords):
            point[cglob] = r.point[idx]
    for coords, r in results:
        if r.status == "Unbounded":
            direction = [QZERO] * (2 * n)
            for idx, cglob in enumerate(coords):
                direction[cglob] = r.direction[idx]
            return PairingMin(
                "Unbounded", point=Vector.of(point), direction=Vector.of(direction)
            )
    total = sum((r.value for _, r in results), QZERO)
    return PairingMin("Attained", value=total, point=Vector.of(point))


def _solve_blocks(pieces_by_coords: list, z: Vector, w: Vector, n: int) -> PairingMin:
    results = []
    for coords, sub in pieces_by_coords:
        xs = [c for c in coords if c < n]
        if len(coords) != 2 * len(xs):  # pragma: no cover
            raise InternalCheckError("pairing block lost its coordinate pairing")
        zb = Vector.of([z[c] for c in xs])
        wb = Vector.of([w[c] for c in xs])
        results.append((coords, pairing_min_piece(sub, zb, wb)))
    return _combine_block_results(n, results)


def pairing_min_piece(piece: Polyhedron, z: Vector, w: Vector) -> PairingMin:
    """Minimize <y_x - z, y_u - w> over a nonempty piece, exactly."""
    if piece.is_empty:
        raise InputError("pairing minimization over an empty piece")
    n = z.dim
    if w.dim != n or piece.ambient_dim != 2 * n:
        raise InputError("pairing blocks must split the piece dimension in half")
    blocks = coordinate_blocks((piece,), n)
    if len(blocks) > 1:
        return _solve_blocks([(coords, restrict_to_block(piece, coords)) for coords in blocks], z, w, n)
    h = swap_matrix(n)
    c = (-w).concat(-z)
    k = z.dot(w)

    v = piece.v
    gens = list(v.rays) + [l for l in v.lines] + [-l for l in v.lines]
    if gens:
        for g in gens:
            if _quad(h, g) < 0:
                return PairingMin("Unbounded", point=rel_interior_point(piece), direction=g)
        gram = _gram(h, gens)
        value, mu = _simplex_quad_min(gram)
        if value < 0:
            d = Vector.zero(2 * n)
            for coeff, g in zip(mu.entries, gens):
                d = d + g.scale(coeff)
            d = primitive(d)
            if _quad(h, d) >= 0:  # pragma: no cover
                raise InternalCheckError("copositivity witness lost its negativity")
            return PairingMin("Unbounded", point=rel_interior_point(piece), direction=d)
        for d in _zero_directions(h, gens, gram):
            for y in v.vertices:
                if _slope(h, c, y, d) < 0:
                    return PairingMin("Unbounded", point=y, direction=d)
    value, point = _min_over_faces(piece, h, c, k)
    return PairingMin("Attained", value=value, point=point)


def combine_block_results(n: int, results) -> PairingMin:
    """Public assembly hook for callers that solve blocks themselves."""
    return _combine_block_results(n, list(results))


def pairing_min(pieces, z: Vector, w: Vector) -> PairingMin:
    """Minimize the pairing over a union of pieces."""
    items = list(pieces)
    if not items:
        raise InputError("pairing minimization over an empty union")
    best = None
    for piece in items:
        r = pairing_min_piece(piece, z, w)
        if r.status == "Unbounded":
            return r
        if best is None or r.value < best.value:
            best = r
    return best


def descend_to_negative(result: PairingMin, h: Matrix, c: Vector, k) -> Vector:
    """A concrete point with negative objective from an Unbounded certificate."""
    if result.status != "Unbounded":
        raise InputError("descent requires an unboundedness certificate")
    y, d = result.point, result.direction
    t = QONE
    for _ in range(512):
        cand = y + d.scale(t)
        if _objective(h, c, k, cand) < 0:
            return cand
        t = t * 2
    raise InternalCheckError("descent direction failed to reach a negative value")  # pragma: no cover


def psd_certificate(m: Matrix) -> tuple:
    """Exact test whether a symmetric rational matrix is PSD.

    Returns (True, None) or (False, t) with t^T M t < 0.  Uses diagonal
    pivoting: a negative diagonal entry is an immediate witness; a zero
    diagonal with a nonzero off-diagonal entry gives an indefinite 2x2 block;
    otherwise a positive pivot reduces to the Schur complement.
    """
    size = m.rows
    rows = [[m.row(i)[j] for j in range(size)] for i in range(size)]
    # carrier[i] expresses current coordinate i in the original basis
    carrier = [Vector.unit(size, i) for i in range(size)]
    active = list(range(size))
    while active:
        pivot = None
        for i in active:
            if rows[i][i] < 0:
                return False, carrier[i]
            if rows[i][i] > 0 and pivot is None:
                pivot = i
        if pivot is None:
            # all active diagonal entries are zero
            for i in active:
                for j in active:
                    if i != j and rows[i][j] != 0:
                        s = QONE if rows[i][j] > 0 else -QONE
                        t = carrier[i] - carrier[j].scale(s)
                        return False, t
            return True, None
        p = rows[pivot][pivot]
        rest = [i for i in active if i != pivot]
        for i in rest:
            f = rows[i][pivot] / p
            if f != 0:
                carrier[i] = carrier[i] - carrier[pivot].scale(f)
                for j in rest:
                    rows[i][j] = rows[i][j] - f * rows[pivot][j]
        for i in rest:
            rows[i][pivot] = QZERO
            rows[pivot][i] = QZERO
        active = rest
    return True, None


def in_range(m: Matrix, b: Vector) -> bool:
    """Whether b lies in the column range of a symmetric matrix m."""
    return solve_linear(m, b) is not None

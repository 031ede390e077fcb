"""Set-valued operators on Q^n represented by polyhedral graphs.

An operator is nothing but its graph: a finite union of closed convex
polyhedra in Q^(dim_in + dim_out), points stored as the concatenation
(x, u) with u in Mx.  Domains, ranges, values, single-valuedness are all
derived from the graph; none of them is ever declared.

Compound constructions (sums, sandwiches, resolvent compositions, the
Kuhn-Tucker operator) follow one scheme: embed the participating graph
pieces into a common coordinate space by pulling their H-representations
back through block selectors, intersect, and project onto the output
coordinates.  All of it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .config import limits
from .errors import (
    DimensionMismatch,
    InputError,
    InternalCheckError,
    PreconditionError,
)
from .linalg import (
    Matrix,
    Q,
    Subspace,
    Vector,
    as_q,
    orthogonal_complement,
)
from .polyhedra import (
    Polyhedron,
    PolySet,
    faces,
    linear_image,
    polyset_contains,
    polyset_equal,
    polyset_image,
    polyset_union,
    product,
)


@dataclass(frozen=True)
class Operator:
    """A set-valued operator, identified with its polyhedral graph."""

    dim_in: int
    dim_out: int
    graph: PolySet
    certificates: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.dim_in <= 0 or self.dim_out <= 0:
            raise InputError("operator dimensions must be positive")
        if max(self.dim_in, self.dim_out) > limits().max_dim:
            raise InputError(
                f"operator dimension exceeds the configured maximum {limits().max_dim}"
            )
        want = self.dim_in + self.dim_out
        if self.graph.ambient_dim != want:
            raise DimensionMismatch(want, self.graph.ambient_dim, "graph ambient")

    @property
    def square(self) -> bool:
        return self.dim_in == self.dim_out


@dataclass(frozen=True)
class LinearRelation:
    """A linear (possibly multivalued, possibly partial) relation.

    The graph is a vector subspace of Q^(dim_in + dim_out); single-valued
    matrices are the special case with graph {(x, Mx)}.
    """

    dim_in: int
    dim_out: int
    graph_subspace: Subspace

    def __post_init__(self):
        if self.dim_in <= 0 or self.dim_out <= 0:
            raise InputError("relation dimensions must be positive")
        want = self.dim_in + self.dim_out
        if self.graph_subspace.ambient_dim != want:
            raise DimensionMismatch(want, self.graph_subspace.ambient_dim, "graph subspace")


@dataclass(frozen=True)
class Scenario:
    """Data for a linearly composed sum A + sum_k L_k* o B_k o L_k."""

    a: Operator
    couples: tuple
    options: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.a.square:
            raise InputError("the base operator of a scenario must map a space to itself")
        object.__setattr__(self, "couples", tuple(self.couples))
        for l, b in self.couples:
            if l.dim_in != self.a.dim_in:
                raise DimensionMismatch(self.a.dim_in, l.dim_in, "relation input")
            if not b.square or b.dim_in != l.dim_out:
                raise DimensionMismatch(l.dim_out, b.dim_in, "inner operator")


def make_operator(dim_in: int, dim_out: int, pieces: Iterable[Polyhedron]) -> Operator:
    return Operator(dim_in, dim_out, PolySet.make(dim_in + dim_out, pieces))


def identity_operator(n: int) -> Operator:
    basis = [Vector.unit(2 * n, i) + Vector.unit(2 * n, n + i) for i in range(n)]
    piece = Polyhedron.from_v(2 * n, vertices=[Vector.zero(2 * n)], lines=basis)
    return make_operator(n, n, [piece])


def zero_operator(n: int) -> Operator:
    basis = [Vector.unit(2 * n, i) for i in range(n)]
    piece = Polyhedron.from_v(2 * n, vertices=[Vector.zero(2 * n)], lines=basis)
    return make_operator(n, n, [piece])


def matrix_operator(m: Matrix) -> Operator:
    return relation_operator(linear_relation_from_matrix(m))


def relation_operator(l: LinearRelation) -> Operator:
    """The linear relation viewed as an Operator (same graph)."""
    dim = l.dim_in + l.dim_out
    basis = list(l.graph_subspace.basis)
    piece = Polyhedron.from_v(dim, vertices=[Vector.zero(dim)], lines=basis)
    return make_operator(l.dim_in, l.dim_out, [piece])


def linear_relation_from_matrix(m: Matrix) -> LinearRelation:
    n, k = m.cols, m.rows
    gens = []
    for i in range(n):
        e = Vector.unit(n, i)
        gens.append(e.concat(m.apply(e)))
    return LinearRelation(n, k, Subspace.span(n + k, gens))


def linear_relation_from_generators(dim_in: int, dim_out: int, gens: Sequence) -> LinearRelation:
    vs = [g if isinstance(g, Vector) else Vector.of(g) for g in gens]
    return LinearRelation(dim_in, dim_out, Subspace.span(dim_in + dim_out, vs))


def adjoint(l: LinearRelation) -> LinearRelation:
    """gra L* = {(v,u) : <x,u> = <y,v> for every (x,y) in gra L}.

    Equivalently (u,-v) runs over the orthogonal complement of gra L, so the
    adjoint graph is spanned by (-b, a) for (a, b) in a complement basis.
    """
    comp = orthogonal_complement(l.graph_subspace)
    n, m = l.dim_in, l.dim_out
    gens = []
    for w in comp.basis:
        a, b = w.block(0, n), w.block(n, n + m)
        gens.append((-b).concat(a))
    return LinearRelation(m, n, Subspace.span(m + n, gens))


def normal_cone_operator(c: Polyhedron) -> Operator:
    """N_C as a graph: the union over faces F of C of F x (cone at F)."""
    if c.is_empty:
        raise InputError("normal cone of an empty set")
    n = c.ambient_dim
    h = c.h
    pieces = []
    for f in faces(c):
        # constraints are stored as <a, x> >= b, so -a is the outward normal
        rays = [-h.inequalities[i][0] for i in f.tight]
        lines = [a for a, _ in h.equalities]
        cone = Polyhedron.from_v(n, vertices=[Vector.zero(n)], rays=rays, lines=lines)
        pieces.append(product(f.poly, cone))
    return make_operator(n, n, pieces)


def inverse(m: Operator) -> Operator:
    n, k = m.dim_in, m.dim_out
    rows = [Vector.unit(n + k, n + i) for i in range(k)]
    rows += [Vector.unit(n + k, i) for i in range(n)]
    swap = Matrix.of([r.entries for r in rows])
    return Operator(k, n, polyset_image(m.graph, swap))


def _unit_rows(dim: int, start: int, n: int) -> list:
    return [Vector.unit(dim, start + i) for i in range(n)]


def _matrix_from_rows(rows: Sequence[Vector]) -> Matrix:
    return Matrix.of([r.entries for r in rows])


def _pull_polyhedron(dim: int, selector_rows: Sequence[Vector], piece: Polyhedron):
    """Constraints forcing (selector . y) to lie in piece."""
    sel = _matrix_from_rows(selector_rows).transpose()
    h = piece.h
    ineqs = [(sel.apply(a), b) for a, b in h.inequalities]
    eqs = [(sel.apply(a), b) for a, b in h.equalities]
    return ineqs, eqs


def _pull_subspace(dim: int, selector_rows: Sequence[Vector], space: Subspace):
    """Equalities forcing (selector . y) into the subspace."""
    sel = _matrix_from_rows(selector_rows).transpose()
    eqs = []
    for w in orthogonal_complement(space).basis:
        eqs.append((sel.apply(w), Q(0)))
    return eqs


def _embedded_pieces(dim: int, parts: Sequence[tuple]) -> list:
    """Intersect pulled-back constraint groups; parts mix pieces and subspaces.

    Each entry is (selector_rows, constraint) where the constraint is a
    Polyhedron (one graph piece) or a Subspace (a linear relation's graph).
    Returns the embedded polyhedron, one per combination already fixed by
    the caller.
    """
    ineqs, eqs = [], []
    for rows, constraint in parts:
        if isinstance(constraint, Polyhedron):
            i2, e2 = _pull_polyhedron(dim, rows, constraint)
            ineqs += i2
            eqs += e2
        else:
            eqs += _pull_subspace(dim, rows, constraint)
    return Polyhedron.from_h(dim, ineqs, eqs)


def op_sum(a: Operator, b: Operator) -> Operator:
    """Pointwise (Minkowski) sum: gra = {(x, u+v) : (x,u) in A, (x,v) in B}."""
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatch((a.dim_in, a.dim_out), (b.dim_in, b.dim_out), "operator")
    n, k = a.dim_in, a.dim_out
    dim = n + 2 * k
    x = _unit_rows(dim, 0, n)
    u = _unit_rows(dim, n, k)
    v = _unit_rows(dim, n + k, k)
    out = _matrix_from_rows(x + [u[i] + v[i] for i in range(k)])
    pieces = []
    for p in a.graph.pieces:
        for q in b.graph.pieces:
            emb = _embedded_pieces(dim, [(x + u, p), (x + v, q)])
            if not emb.is_empty:
                pieces.append(linear_image(emb, out))
    return make_operator(n, k, pieces)


def sandwich(l: LinearRelation, b: Operator) -> Operator:
    """L* o B o L: embed (x, y, v, u), constrain the three graphs, project."""
    if b.dim_in != l.dim_out or not b.square:
        raise DimensionMismatch(l.dim_out, b.dim_in, "inner operator")
    n, g = l.dim_in, l.dim_out
    ladj = adjoint(l)
    dim = 2 * n + 2 * g
    x = _unit_rows(dim, 0, n)
    y = _unit_rows(dim, n, g)
    v = _unit_rows(dim, n + g, g)
    u = _unit_rows(dim, n + 2 * g, n)
    out = _matrix_from_rows(x + u)
    pieces = []
    for p in b.graph.pieces:
        emb = _embedded_pieces(dim, [
            (x + y, l.graph_subspace),
            (y + v, p),
            (v + u, ladj.graph_subspace),
        ])
        if not emb.is_empty:
            pieces.append(linear_image(emb, out))
    return make_operator(n, n, pieces)


def composite(s: Scenario) -> Operator:
    """A + sum_k L_k* o B_k o L_k, folded with op_sum."""
    m = s.a
    for l, b in s.couples:
        m = op_sum(m, sandwich(l, b))
    return m


@dataclass(frozen=True)
class ScenarioEmbedding:
    """Joint polyhedral model of all graphs entering a scenario.

    Coordinates are (x, r, y_1, v_1, u_1, ..., y_K, v_K, u_K) subject to
    (x, r) in gra A, (x, y_k) in gra L_k, (y_k, v_k) in gra B_k and
    (v_k, u_k) in gra L_k*.  The composite graph is the image under
    (x, r + sum_k u_k); keeping the pieces around lets callers draw
    consistent sample decompositions for pairing inequalities.
    """

    scenario: Scenario
    dim: int
    pieces: tuple
    x_at: tuple
    r_at: tuple
    y_at: tuple
    v_at: tuple
    u_at: tuple

    def split(self, point: Vector) -> dict:
        n = self.scenario.a.dim_in
        parts = {
            "x": point.block(self.x_at[0], self.x_at[1]),
            "r": point.block(self.r_at[0], self.r_at[1]),
            "y": [], "v": [], "u": [],
        }
        for k in range(len(self.scenario.couples)):
            parts["y"].append(point.block(self.y_at[k][0], self.y_at[k][1]))
            parts["v"].append(point.block(self.v_at[k][0], self.v_at[k][1]))
            parts["u"].append(point.block(self.u_at[k][0], self.u_at[k][1]))
        total = parts["r"]
        for u in parts["u"]:
            total = total + u
        parts["value"] = total
        return parts


def scenario_embedding(s: Scenario) -> ScenarioEmbedding:
    n = s.a.dim_in
    gs = [l.dim_out for l, _ in s.couples]
    dim = 2 * n
    y_at, v_at, u_at = [], [], []
    for g in gs:
        y_at.append((dim, dim + g)); dim += g
        v_at.append((dim, dim + g)); dim += g
        u_at.append((dim, dim + n)); dim += n
    x = _unit_rows(dim, 0, n)
    r = _unit_rows(dim, n, n)
    combos = [[]]
    for _, b in s.couples:
        combos = [c + [q] for c in combos for q in b.graph.pieces]
    pieces = []
    for pa in s.a.graph.pieces:
        for combo in combos:
            parts = [(x + r, pa)]
            for k, (l, _b) in enumerate(s.couples):
                y = _unit_rows(dim, y_at[k][0], gs[k])
                v = _unit_rows(dim, v_at[k][0], gs[k])
                u = _unit_rows(dim, u_at[k][0], n)
                parts.append((x + y, l.graph_subspace))
                parts.append((y + v, combo[k]))
                parts.append((v + u, adjoint(l).graph_subspace))
            emb = _embedded_pieces(dim, parts)
            if not emb.is_empty:
                pieces.append(emb)
    return ScenarioEmbedding(
        scenario=s, dim=dim, pieces=tuple(pieces),
        x_at=(0, n), r_at=(n, 2 * n),
        y_at=tuple(y_at), v_at=tuple(v_at), u_at=tuple(u_at),
    )


def op_domain(m: Operator) -> PolySet:
    rows = _unit_rows(m.dim_in + m.dim_out, 0, m.dim_in)
    return polyset_image(m.graph, _matrix_from_rows(rows))


def op_range(m: Operator) -> PolySet:
    rows = _unit_rows(m.dim_in + m.dim_out, m.dim_in, m.dim_out)
    return polyset_image(m.graph, _matrix_from_rows(rows))


def apply_operator(m: Operator, x) -> PolySet:
    x = x if isinstance(x, Vector) else Vector.of(x)
    if x.dim != m.dim_in:
        raise DimensionMismatch(m.dim_in, x.dim, "argument")
    n, k = m.dim_in, m.dim_out
    pieces = []
    for p in m.graph.pieces:
        h = p.h
        eqs = list(h.equalities) + [
            (Vector.unit(n + k, i), x.entries[i]) for i in range(n)
        ]
        slice_ = Polyhedron.from_h(n + k, h.inequalities, eqs)
        if not slice_.is_empty:
            rows = _unit_rows(n + k, n, k)
            pieces.append(linear_image(slice_, _matrix_from_rows(rows)))
    return PolySet.make(k, pieces)


def image_of_set(m: Operator, s: PolySet) -> PolySet:
    if s.ambient_dim != m.dim_in:
        raise DimensionMismatch(m.dim_in, s.ambient_dim, "set")
    n, k = m.dim_in, m.dim_out
    out = _matrix_from_rows(_unit_rows(n + k, n, k))
    pieces = []
    for p in m.graph.pieces:
        for q in s.pieces:
            h, hq = p.h, q.h
            lift = _matrix_from_rows(_unit_rows(n + k, 0, n)).transpose()
            ineqs = list(h.inequalities) + [(lift.apply(a), b) for a, b in hq.inequalities]
            eqs = list(h.equalities) + [(lift.apply(a), b) for a, b in hq.equalities]
            cut = Polyhedron.from_h(n + k, ineqs, eqs)
            if not cut.is_empty:
                pieces.append(linear_image(cut, out))
    return PolySet.make(k, pieces)


def resolvent(m: Operator) -> Operator:
    """J_M = (Id + M)^(-1), as the graph transform (x,u) -> (x+u, x)."""
    if not m.square:
        raise InputError("resolvent needs an operator from a space to itself")
    n = m.dim_in
    x = _unit_rows(2 * n, 0, n)
    u = _unit_rows(2 * n, n, n)
    out = _matrix_from_rows([x[i] + u[i] for i in range(n)] + x)
    return Operator(n, n, polyset_image(m.graph, out))


def reflected_resolvent(m: Operator) -> Operator:
    """R_M = 2 J_M - Id, as a graph transform of the resolvent."""
    j = resolvent(m)
    n = m.dim_in
    z = _unit_rows(2 * n, 0, n)
    x = _unit_rows(2 * n, n, n)
    out = _matrix_from_rows(z + [x[i].scale(Q(2)) - z[i] for i in range(n)])
    return Operator(n, n, polyset_image(j.graph, out))


def op_compose(outer: Operator, inner: Operator) -> Operator:
    """Graph composition {(x, u) : exists y in inner(x) with u in outer(y)}."""
    if inner.dim_out != outer.dim_in:
        raise DimensionMismatch(inner.dim_out, outer.dim_in, "composition interface")
    n, mid, k = inner.dim_in, inner.dim_out, outer.dim_out
    dim = n + mid + k
    x = _unit_rows(dim, 0, n)
    y = _unit_rows(dim, n, mid)
    u = _unit_rows(dim, n + mid, k)
    out = _matrix_from_rows(x + u)
    pieces = []
    for p in inner.graph.pieces:
        for q in outer.graph.pieces:
            emb = _embedded_pieces(dim, [(x + y, p), (y + u, q)])
            if not emb.is_empty:
                pieces.append(linear_image(emb, out))
    return make_operator(n, k, pieces)


def scale_output(m: Operator, c) -> Operator:
    c = as_q(c)
    n, k = m.dim_in, m.dim_out
    rows = _unit_rows(n + k, 0, n) + [r.scale(c) for r in _unit_rows(n + k, n, k)]
    return Operator(n, k, polyset_image(m.graph, _matrix_from_rows(rows)))


def _resolvent_is_total_and_single_valued(m: Operator) -> Optional[str]:
    """None if J_M is a total single-valued map, else a reason string."""
    n = m.dim_in
    j = resolvent(m)
    dom = op_domain(j)
    hit = polyset_contains(dom, Polyhedron.full_space(n))
    if not hit:
        return "its resolvent is not defined everywhere"
    dim = 3 * n
    z = _unit_rows(dim, 0, n)
    x1 = _unit_rows(dim, n, n)
    x2 = _unit_rows(dim, 2 * n, n)
    diff = _matrix_from_rows([x1[i] - x2[i] for i in range(n)])
    origin = Polyhedron.point(Vector.zero(n))
    for p in j.graph.pieces:
        for q in j.graph.pieces:
            emb = _embedded_pieces(dim, [(z + x1, p), (z + x2, q)])
            if emb.is_empty:
                continue
            img = linear_image(emb, diff)
            if img != origin:
                return "its resolvent is multivalued"
    return None


def dr_displacement(a: Operator, b: Operator) -> tuple:
    """Douglas-Rachford operator T = Id - J_A + J_B o R_A and Id - T.

    The displacement Id - T is also built through the two factorizations
    J_A - J_B o R_A and J_(A^-1) + J_(B^-1) o R_A, and all three graphs
    must coincide.
    """
    if not a.square or not b.square or a.dim_in != b.dim_in:
        raise DimensionMismatch((a.dim_in, a.dim_out), (b.dim_in, b.dim_out), "operator")
    for name, op in (("A", a), ("B", b)):
        reason = _resolvent_is_total_and_single_valued(op)
        if reason is not None:
            raise PreconditionError(
                f"operator {name} is not maximally monotone: {reason}"
            )
    n = a.dim_in
    ja, jb = resolvent(a), resolvent(b)
    ra = reflected_resolvent(a)

    dim = 3 * n
    z = _unit_rows(dim, 0, n)
    x = _unit_rows(dim, n, n)
    y = _unit_rows(dim, 2 * n, n)
    ra_sel = [x[i].scale(Q(2)) - z[i] for i in range(n)]
    t_out = _matrix_from_rows(z + [z[i] - x[i] + y[i] for i in range(n)])
    d_out = _matrix_from_rows(z + [x[i] - y[i] for i in range(n)])
    t_pieces, d_pieces = [], []
    for p in ja.graph.pieces:
        for q in jb.graph.pieces:
            emb = _embedded_pieces(dim, [(z + x, p), (ra_sel + y, q)])
            if emb.is_empty:
                continue
            t_pieces.append(linear_image(emb, t_out))
            d_pieces.append(linear_image(emb, d_out))
    t = make_operator(n, n, t_pieces)
    disp = make_operator(n, n, d_pieces)

    alt1 = op_sum(ja, scale_output(op_compose(jb, ra), Q(-1)))
    alt2 = op_sum(resolvent(inverse(a)), op_compose(resolvent(inverse(b)), ra))
    if not polyset_equal(disp.graph, alt1.graph):
        raise InternalCheckError("displacement disagrees with J_A - J_B o R_A")
    if not polyset_equal(disp.graph, alt2.graph):
        raise InternalCheckError("displacement disagrees with J_(A^-1) + J_(B^-1) o R_A")
    return t, disp


def kuhn_tucker(a: Operator, b: Operator, l: LinearRelation) -> Operator:
    """(x,v) -> (Ax + L*v) x (-Lx + B^(-1)v) on Q^n x Q^m."""
    if not a.square or not b.square:
        raise InputError("Kuhn-Tucker data needs square operators")
    n, m = a.dim_in, b.dim_in
    if (l.dim_in, l.dim_out) != (n, m):
        raise DimensionMismatch((n, m), (l.dim_in, l.dim_out), "coupling relation")
    ladj = adjoint(l)
    dim = 3 * (n + m)
    x = _unit_rows(dim, 0, n)
    v = _unit_rows(dim, n, m)
    ax = _unit_rows(dim, n + m, n)
    bv = _unit_rows(dim, 2 * n + m, m)
    sv = _unit_rows(dim, 2 * n + 2 * m, n)
    tx = _unit_rows(dim, 3 * n + 2 * m, m)
    out = _matrix_from_rows(
        x + v
        + [ax[i] + sv[i] for i in range(n)]
        + [bv[i] - tx[i] for i in range(m)]
    )
    pieces = []
    for p in a.graph.pieces:
        for q in b.graph.pieces:
            emb = _embedded_pieces(dim, [
                (x + ax, p),
                (bv + v, q),
                (v + sv, ladj.graph_subspace),
                (x + tx, l.graph_subspace),
            ])
            if not emb.is_empty:
                pieces.append(linear_image(emb, out))
    return make_operator(n + m, n + m, pieces)


def congruence_transform(m: Operator, s: Matrix) -> Operator:
    """Graph map (x, u) -> (Sx, S^(-T)u); preserves the monotone pairing."""
    if not m.square:
        raise InputError("congruence transform needs an operator from a space to itself")
    if s.rows != s.cols or s.rows != m.dim_in:
        raise DimensionMismatch(m.dim_in, (s.rows, s.cols), "transform matrix")
    inv = s.inverse()
    if inv is None:
        raise InputError("congruence transform needs an invertible matrix")
    big = Matrix.block_diag(s, inv.transpose())
    return Operator(m.dim_in, m.dim_out, polyset_image(m.graph, big))


def pwl1d_operator(points: Sequence, head=None, tail=None) -> Operator:
    """Monotone staircase in Q^2 from chain points plus optional end rays.

    The chain must move weakly right and weakly up at every step; the head
    ray points backward (weakly left and down), the tail ray forward.
    """
    pts = [p if isinstance(p, Vector) else Vector.of(p) for p in points]
    if not pts:
        raise InputError("a staircase needs at least one chain point")
    for p in pts:
        if p.dim != 2:
            raise DimensionMismatch(2, p.dim, "chain point")
    for prev, nxt in zip(pts, pts[1:]):
        d = nxt - prev
        if d.is_zero:
            raise InputError("repeated staircase chain point")
        if d.entries[0] < 0 or d.entries[1] < 0:
            raise InputError(
                f"staircase step {prev} -> {nxt} moves down or left; the chain must be monotone"
            )
    pieces = []
    for prev, nxt in zip(pts, pts[1:]):
        pieces.append(Polyhedron.from_v(2, vertices=[prev, nxt]))
    if head is not None:
        hv = head if isinstance(head, Vector) else Vector.of(head)
        if hv.is_zero or hv.entries[0] > 0 or hv.entries[1] > 0:
            raise InputError("the head ray must point weakly left and down")
        pieces.append(Polyhedron.from_v(2, vertices=[pts[0]], rays=[hv]))
    if tail is not None:
        tv = tail if isinstance(tail, Vector) else Vector.of(tail)
        if tv.is_zero or tv.entries[0] < 0 or tv.entries[1] < 0:
            raise InputError("the tail ray must point weakly right and up")
        pieces.append(Polyhedron.from_v(2, vertices=[pts[-1]], rays=[tv]))
    if not pieces:
        pieces.append(Polyhedron.point(pts[0]))
    return make_operator(1, 1, pieces)


def product_operator(ops: Sequence[Operator]) -> Operator:
    """Blockwise product: inputs concatenated, outputs concatenated."""
    ops = list(ops)
    if not ops:
        raise InputError("a product needs at least one factor")
    cur = ops[0]
    for nxt in ops[1:]:
        n1, k1 = cur.dim_in, cur.dim_out
        n2, k2 = nxt.dim_in, nxt.dim_out
        dim = n1 + k1 + n2 + k2
        rows = (
            _unit_rows(dim, 0, n1)
            + _unit_rows(dim, n1 + k1, n2)
            + _unit_rows(dim, n1, k1)
            + _unit_rows(dim, n1 + k1 + n2, k2)
        )
        perm = _matrix_from_rows(rows)
        pieces = []
        for p in cur.graph.pieces:
            for q in nxt.graph.pieces:
                pieces.append(linear_image(product(p, q), perm))
        cur = make_operator(n1 + n2, k1 + k2, pieces)
    return cur


def graph_union(a: Operator, b: Operator) -> Operator:
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatch((a.dim_in, a.dim_out), (b.dim_in, b.dim_out), "operator")
    return Operator(a.dim_in, a.dim_out, polyset_union(a.graph, b.graph))

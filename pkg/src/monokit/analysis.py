"""Certificates about a single operator: boundedness of the split pairing,
monotonicity, maximality, the three-star property, and set comparisons.

Every check here is exact over the rationals.  Where a property admits a
finite complete certificate (monotonicity, maximality via the resolvent
range, the three-star property for graphs that are linear subspaces) the
verdict is definitive.  The three-star check for general piecewise graphs
falls back to a deterministic finite probe sweep and reports ProbePassed
rather than Proved, keeping the evidence level visible to callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import limits
from .errors import (
    DimensionMismatch,
    IncompleteAnalysisError,
    InputError,
    InternalCheckError,
    PreconditionError,
    ResourceLimitError,
)
from .linalg import Matrix, Q, QONE, QZERO, Vector, kernel, primitive
from .polyhedra import (
    Polyhedron,
    PolySet,
    Verdict,
    convex_hull,
    intersect,
    minkowski_sum,
    negate,
    polyset_contains,
    polyset_equal,
    product,
    rel_interior_point,
)
from .quadmin import (
    combine_block_results,
    coordinate_blocks,
    descend_to_negative,
    in_range,
    pairing_min_piece,
    psd_certificate,
    restrict_to_block,
    swap_matrix,
)
from .reports import HypothesisResult, Report, derive_status
from .operators import Operator, identity_operator, op_domain, op_range, op_sum


@dataclass(frozen=True)
class BoundStatus:
    """Whether inf over the graph of <x - z, u - w> is finite.

    For Bounded, lower_bound is the exact infimum (always attained here).
    For Unbounded, direction is a pair (point, dir): point lies on the
    graph and the pairing strictly decreases along point + t*dir for
    t >= 1, without lower bound.
    """

    tag: str
    lower_bound: Optional[object] = None
    direction: Optional[tuple] = None


@dataclass(frozen=True)
class SimeqVerdict:
    """Closure and relative-interior equality of two piecewise sets.

    In the closed polyhedral model both components coincide, so holds is
    simply their conjunction; the witness is a point in one set but not
    the other when equality fails.
    """

    holds: bool
    closure_equal: bool
    rint_equal: bool
    witness: Optional[Vector] = None


@dataclass(frozen=True)
class ThreeStarVerdict:
    """Outcome of the three-star test.

    Proved and Refuted are exact.  Refuted carries (x, u, direction) with
    x in the domain, u in the range, and direction certifying that the
    pairing against (x, u) is unbounded below.  ProbePassed means every
    probe pair in a deterministic finite sweep was bounded.
    """

    tag: str
    witness: Optional[tuple] = None
    probes_used: int = 0


def _pairing_value(y: Vector, z: Vector, w: Vector):
    n = z.dim
    return (y.block(0, n) - z).dot(y.block(n, 2 * n) - w)


def _rescaled_descent(point: Vector, direction: Vector, z: Vector, w: Vector) -> tuple:
    """Scale a descent direction so the pairing strictly decreases for t >= 1.

    Along point + t*d the pairing is quadratic with leading coefficient
    q <= 0 (by the certificate).  If q < 0 but the initial slope is
    positive, an integer multiple of d pushes the decreasing regime below
    t = 1.
    """
    n = z.dim
    h = swap_matrix(n)
    c = (-w).concat(-z)
    q = Q(1, 2) * direction.dot(h.apply(direction))
    s = direction.dot(h.apply(point)) + c.dot(direction)
    if q > 0 or (q == 0 and s >= 0):  # pragma: no cover - certificate guarantees descent
        raise InternalCheckError("claimed descent direction does not descend")
    d = direction
    if q < 0 and s > 0:
        lam = s / -q
        scale = Q(int(lam) + 1)
        d = direction.scale(scale)
    vals = [_pairing_value(point + d.scale(Q(t)), z, w) for t in (1, 10, 100)]
    base = _pairing_value(point, z, w)
    if not (vals[0] < base and vals[1] < vals[0] and vals[2] < vals[1]):  # pragma: no cover
        raise InternalCheckError("rescaled descent direction is not strictly decreasing")
    return point, d


def bh_inf_status(m: Operator, z: Vector, w: Vector) -> BoundStatus:
    """Exact status of inf over gra M of <x - z, u - w>."""
    if not m.square:
        raise InputError("the pairing requires a square operator")
    z = z if isinstance(z, Vector) else Vector.of(z)
    w = w if isinstance(w, Vector) else Vector.of(w)
    if z.dim != m.dim_in:
        raise DimensionMismatch(m.dim_in, z.dim, "probe point")
    if w.dim != m.dim_out:
        raise DimensionMismatch(m.dim_out, w.dim, "probe value")
    if m.graph.is_empty:
        raise InputError("the pairing over an empty graph has no status")
    best = None
    try:
        for piece in m.graph.pieces:
            r = pairing_min_piece(piece, z, w)
            if r.status == "Unbounded":
                pt, d = _rescaled_descent(r.point, r.direction, z, w)
                return BoundStatus("Unbounded", direction=(pt, d))
            if best is None or r.value < best:
                best = r.value
    except ResourceLimitError:
        return BoundStatus("Unknown")
    return BoundStatus("Bounded", lower_bound=best)


def _violation_pair(p: Polyhedron, q: Polyhedron, diff_point: Vector) -> tuple:
    """Split a negative difference point back into a pair of graph points."""
    dim = p.ambient_dim
    prod = product(p, q)
    eqs = [
        (Vector.unit(2 * dim, i) - Vector.unit(2 * dim, dim + i), diff_point[i])
        for i in range(dim)
    ]
    cut = intersect(prod, Polyhedron.from_h(2 * dim, [], eqs))
    if cut.is_empty:  # pragma: no cover - diff_point comes from p + (-q)
        raise InternalCheckError("difference point did not split into a pair")
    joint = rel_interior_point(cut)
    return joint.block(0, dim), joint.block(dim, 2 * dim)


def _block_difference_min(sub_p: Polyhedron, sub_q: Polyhedron, cache: dict):
    key = (sub_p, sub_q)
    r = cache.get(key)
    if r is None:
        half = sub_p.ambient_dim // 2
        zero = Vector.zero(half)
        r = pairing_min_piece(minkowski_sum(sub_p, negate(sub_q)), zero, zero)
        cache[key] = r
    return r


def check_monotone(m: Operator) -> Verdict:
    """Exact monotonicity of the whole piecewise graph.

    A violation is witnessed by two graph points ((x, u), (y, v)) with
    <x - y, u - v> < 0.  Checks every unordered pair of pieces by
    minimizing the pairing over the difference body P + (-Q).  The
    coordinate partition is taken jointly over all pieces, so block
    subproblems repeat across pairs and their results are cached; for
    product-built graphs this collapses quadratically many pair solves
    into a handful of low-dimensional ones.
    """
    if not m.square:
        raise InputError("monotonicity requires a square operator")
    cached = m.certificates.get("monotone")
    if cached is not None:
        return cached
    n = m.dim_in
    verdict = Verdict(True)
    pieces = m.graph.pieces
    blocks = coordinate_blocks(pieces, n)
    restricted = [[restrict_to_block(p, coords) for coords in blocks] for p in pieces]
    cache: dict = {}
    for i in range(len(pieces)):
        for j in range(i, len(pieces)):
            results = [
                (coords, _block_difference_min(restricted[i][k], restricted[j][k], cache))
                for k, coords in enumerate(blocks)
            ]
            r = combine_block_results(n, results)
            if r.status == "Unbounded":
                h = swap_matrix(n)
                c = Vector.zero(2 * n)
                neg = descend_to_negative(r, h, c, QZERO)
            elif r.value < 0:
                neg = r.point
            else:
                continue
            a, b = _violation_pair(pieces[i], pieces[j], neg)
            xa, ua = a.block(0, n), a.block(n, 2 * n)
            xb, ub = b.block(0, n), b.block(n, 2 * n)
            if (xa - xb).dot(ua - ub) >= 0:  # pragma: no cover
                raise InternalCheckError("monotonicity witness fails to violate")
            verdict = Verdict(False, witness=((xa, ua), (xb, ub)))
            break
        if not verdict.holds:
            break
    m.certificates["monotone"] = verdict
    return verdict


def check_maximal(m: Operator) -> Verdict:
    """Maximality via the Minty criterion: ran(Id + M) is the whole space.

    A witness is a point z outside ran(Id + M); then graph(M) extended by
    any (x, z - x) with the pairing kept nonnegative stays monotone, so M
    was not maximal.
    """
    mono = check_monotone(m)
    if not mono.holds:
        raise PreconditionError("maximality is only defined for monotone operators")
    cached = m.certificates.get("maximal")
    if cached is not None:
        return cached
    n = m.dim_in
    ran = op_range(op_sum(identity_operator(n), m))
    verdict = polyset_contains(ran, Polyhedron.full_space(n))
    m.certificates["maximal"] = verdict
    return verdict


def _point_pool(s: PolySet) -> list:
    """Deterministic probe points of a piecewise set.

    All piece vertices, pairwise midpoints of vertices, and each vertex
    pushed one step along each primitive ray and along both signs of each
    line; deduplicated and canonically ordered.
    """
    verts = []
    seen = set()

    def add(v: Vector):
        if v.entries not in seen:
            seen.add(v.entries)
            verts.append(v)

    base = []
    for piece in s.pieces:
        rep = piece.v
        base.extend(rep.vertices)
        for vx in rep.vertices:
            for ray in rep.rays:
                add(vx + primitive(ray))
            for line in rep.lines:
                step = primitive(line)
                add(vx + step)
                add(vx - step)
    for v in base:
        add(v)
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            add((base[i] + base[j]).scale(Q(1, 2)))
    verts.sort(key=lambda v: v.entries)
    return verts


def _subspace_three_star(m: Operator) -> ThreeStarVerdict:
    """Complete three-star decision when the graph is a linear subspace.

    With basis matrix N, the pairing against (x, u) restricted to the
    graph is a quadratic with Hessian G = N^T H N and linear term
    N^T(-u, -x).  It is bounded below exactly when G is positive
    semidefinite and the linear term lies in ran G; both conditions are
    linear in (x, u), so checking them on domain and range bases decides
    the property for all probes at once.
    """
    n = m.dim_in
    piece = m.graph.pieces[0]
    basis = list(piece.v.lines)
    zero2n = Vector.zero(2 * n)
    zero = Vector.zero(n)
    if not basis:
        return ThreeStarVerdict("Proved")
    nmat = Matrix.from_columns(basis)
    h = swap_matrix(n)
    g = Matrix.of([[basis[i].dot(h.apply(basis[j])) for j in range(len(basis))] for i in range(len(basis))])
    ok, bad = psd_certificate(g)
    if not ok:
        direction = nmat.apply(bad)
        pt, d = _rescaled_descent(zero2n, direction, zero, zero)
        return ThreeStarVerdict("Refuted", witness=(zero, zero, (pt, d)))

    def refute(x: Vector, u: Vector, phi: Vector) -> ThreeStarVerdict:
        for kv in kernel(g).basis:
            slope = phi.dot(kv)
            if slope != 0:
                if slope > 0:
                    kv = -kv
                pt, d = _rescaled_descent(zero2n, nmat.apply(kv), x, u)
                return ThreeStarVerdict("Refuted", witness=(x, u, (pt, d)))
        raise InternalCheckError("range test failed without a kernel witness")  # pragma: no cover

    dom = op_domain(m).pieces[0].v.lines
    ran = op_range(m).pieces[0].v.lines
    for d_vec in dom:
        phi = nmat.transpose().apply(zero.concat(-d_vec))
        if not in_range(g, phi):
            return refute(d_vec, zero, phi)
    for r_vec in ran:
        phi = nmat.transpose().apply((-r_vec).concat(zero))
        if not in_range(g, phi):
            return refute(zero, r_vec, phi)
    return ThreeStarVerdict("Proved")


def _is_subspace_graph(m: Operator) -> bool:
    if len(m.graph.pieces) != 1:
        return False
    rep = m.graph.pieces[0].v
    return len(rep.vertices) == 1 and rep.vertices[0].is_zero and not rep.rays


def check_3star(m: Operator, probe_budget: Optional[int] = None) -> ThreeStarVerdict:
    """Three-star test: the pairing against every (x, u) in dom x ran is
    bounded below.

    Subspace graphs are decided exactly (Proved or Refuted).  Other graphs
    run a deterministic probe sweep over domain and range sample points;
    an unbounded probe refutes with an explicit descent certificate, and a
    clean sweep reports ProbePassed.
    """
    mono = check_monotone(m)
    if not mono.holds:
        raise PreconditionError("the three-star test is only defined for monotone operators")
    budget = limits().probe_budget if probe_budget is None else probe_budget
    if budget <= 0:
        raise InputError("the probe budget must be positive")
    use_cache = probe_budget is None
    if use_cache:
        cached = m.certificates.get("three_star")
        if cached is not None:
            return cached
    if _is_subspace_graph(m):
        verdict = _subspace_three_star(m)
    else:
        dom_pts = _point_pool(op_domain(m))
        ran_pts = _point_pool(op_range(m))
        pairs = [(x, u) for x in dom_pts for u in ran_pts][:budget]
        verdict = None
        for count, (x, u) in enumerate(pairs, start=1):
            st = bh_inf_status(m, x, u)
            if st.tag == "Unknown":
                raise IncompleteAnalysisError(
                    "a three-star probe hit a resource limit before deciding"
                )
            if st.tag == "Unbounded":
                verdict = ThreeStarVerdict("Refuted", witness=(x, u, st.direction), probes_used=count)
                break
        if verdict is None:
            verdict = ThreeStarVerdict("ProbePassed", probes_used=len(pairs))
    if use_cache:
        m.certificates["three_star"] = verdict
    return verdict


def simeq(s: PolySet, t: PolySet) -> SimeqVerdict:
    """Closure equality plus relative-interior equality of two sets.

    Both sides are finite unions of closed polyhedra, so closure equality
    is decided exactly; relative-interior equality coincides with it in
    this model.  When both sides are single convex pieces and equality
    holds, the relative interior claim is cross-checked by mutual
    membership of interior points.
    """
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, t.ambient_dim, "set")
    eq = polyset_equal(s, t)
    if eq.holds and len(s.pieces) == 1 and len(t.pieces) == 1:
        ps, pt = s.pieces[0], t.pieces[0]
        rs, rt = rel_interior_point(ps), rel_interior_point(pt)
        if not (
            pt.contains_point(rs, "relative_interior")
            and ps.contains_point(rt, "relative_interior")
        ):  # pragma: no cover - equal convex sets share interiors
            raise InternalCheckError("equal pieces with disjoint relative interiors")
    return SimeqVerdict(
        holds=eq.holds, closure_equal=eq.holds, rint_equal=eq.holds, witness=eq.witness
    )


def _shrink_toward(p: Polyhedron, center: Vector) -> Polyhedron:
    """Pull the vertices of p halfway toward an interior point.

    The result sits inside the relative interior of p: strict convex
    combinations with an interior point are interior, and adding
    recession directions keeps them so.
    """
    rep = p.v
    vs = tuple((v + center).scale(Q(1, 2)) for v in rep.vertices)
    return Polyhedron.from_v(p.ambient_dim, vs, rep.rays, rep.lines)


def check_lemma2(c: PolySet, d: PolySet) -> Report:
    """Sandwich criterion: rint(conv D) within C within D forces C, D and
    conv D to agree up to closure and relative interior."""
    if c.ambient_dim != d.ambient_dim:
        raise DimensionMismatch(c.ambient_dim, d.ambient_dim, "set")
    if c.is_empty or d.is_empty:
        raise InputError("the sandwich criterion needs nonempty sets")
    hull = convex_hull(d)
    hyps = []

    v1 = polyset_contains(c, hull)
    hyps.append(
        HypothesisResult(
            "conv D contained in closure of C",
            "pass" if v1.holds else "fail",
            "" if v1.holds else f"hull point {v1.witness} escapes C",
        )
    )

    rip = rel_interior_point(hull)
    rip_in = c.member(rip)
    shrunk = polyset_contains(c, _shrink_toward(hull, rip))
    h2_ok = rip_in and shrunk.holds
    if h2_ok:
        detail = "interior sample and shrunken hull both inside C"
    elif not rip_in:
        detail = f"interior point {rip} of conv D escapes C"
    else:
        detail = f"shrunken hull point {shrunk.witness} escapes C"
    hyps.append(HypothesisResult("rint of conv D contained in C", "pass" if h2_ok else "fail", detail))

    v3 = Verdict(True)
    for piece in c.pieces:
        v3 = polyset_contains(d, piece)
        if not v3.holds:
            break
    hyps.append(
        HypothesisResult(
            "C contained in D",
            "pass" if v3.holds else "fail",
            "" if v3.holds else f"point {v3.witness} of C escapes D",
        )
    )

    witnesses = [v.witness for v in (v1, shrunk, v3) if v.witness is not None]
    if not rip_in:
        witnesses.insert(0 if v1.holds else 1, rip)
    conclusion = None
    conclusion_holds = None
    if all(h.ok for h in hyps):
        first = simeq(c, d)
        second = simeq(d, PolySet.of(hull))
        conclusion = (first, second)
        conclusion_holds = first.holds and second.holds
        for verdict in (first, second):
            if verdict.witness is not None:
                witnesses.append(verdict.witness)
    return Report(
        statement_id="Lemma2",
        hypothesis_results=tuple(hyps),
        lhs_set=c,
        rhs_set=d,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
    )


def rint_range_identity(m: Operator) -> Report:
    """For a maximal monotone operator the range and its convex hull agree
    up to relative interior (here: exactly, the range is convex)."""
    maximal = check_maximal(m)
    if not maximal.holds:
        raise PreconditionError("the range identity needs a maximally monotone operator")
    ran = op_range(m)
    if ran.is_empty:  # pragma: no cover - maximal operators have points
        raise InputError("the operator has an empty range")
    hull = convex_hull(ran)
    hyps = [HypothesisResult("operator maximally monotone", "pass", "Minty criterion")]

    rip = rel_interior_point(hull)
    if not ran.member(rip):  # pragma: no cover - contradicts maximality
        raise InternalCheckError("hull interior point escaped a maximal range")
    hyps.append(HypothesisResult("hull interior point lies in the range", "pass", f"point {rip}"))

    for piece in ran.pieces:
        if not hull.contains_point(rel_interior_point(piece)):  # pragma: no cover
            raise InternalCheckError("range piece escaped the convex hull")
    hyps.append(HypothesisResult("range pieces lie in the hull", "pass", ""))

    full = polyset_contains(ran, hull)
    if not full.holds:  # pragma: no cover - ranges of maximal operators are convex
        raise InternalCheckError("convex hull escaped a maximal range")
    hyps.append(HypothesisResult("hull contained in the range", "pass", ""))

    conclusion = simeq(ran, PolySet.of(hull))
    return Report(
        statement_id="RintIdentity",
        hypothesis_results=tuple(hyps),
        lhs_set=ran,
        rhs_set=PolySet.of(hull),
        conclusion=conclusion,
        witnesses=(),
        status=derive_status(hyps, conclusion.holds),
    )

"""Closed convex polyhedra over Q^n and finite unions of them.

Every polyhedron carries two descriptions: an H-representation (inequalities
<a,x> >= b plus equalities) and a V-representation (vertices, rays, lines,
meaning conv(vertices) + cone(rays) + span(lines)).  Conversion in both
directions runs through the double description cone engine; the results are
canonicalized, so set equality of polyhedra is structural equality of their
canonical H-representations.

A PolySet is a finite union of polyhedra.  Containment of a polyhedron in a
union is decided exactly by recursive region splitting inside the affine hull
of the candidate, discarding lower-dimensional slivers; a surviving full-
dimensional remainder yields a relative-interior witness point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .config import limits
from .dd import dd_cone
from .errors import DimensionMismatch, InputError, InternalCheckError, ResourceLimitError
from .linalg import (
    Matrix,
    Q,
    QONE,
    QZERO,
    Subspace,
    Vector,
    as_q,
    primitive,
    rref_rows,
)


@dataclass(frozen=True)
class HRep:
    ambient_dim: int
    inequalities: tuple  # of (Vector normal, Q offset): <normal, x> >= offset
    equalities: tuple    # of (Vector normal, Q offset): <normal, x> == offset


@dataclass(frozen=True)
class VRep:
    ambient_dim: int
    vertices: tuple  # of Vector
    rays: tuple      # of Vector
    lines: tuple     # of Vector


def _empty_h(dim: int) -> HRep:
    return HRep(dim, ((Vector.zero(dim), QONE),), ())


def _empty_v(dim: int) -> VRep:
    return VRep(dim, (), (), ())


def _hom(normal: Vector, offset) -> Vector:
    return Vector((-offset,) + normal.entries)


def _canonical_lines(dim: int, lines: Iterable[Vector]) -> tuple[Subspace, tuple]:
    span = Subspace.span(dim, list(lines))
    return span, span.basis


def _reduce_sorted(vectors: Iterable[Vector], span: Subspace, scale_primitive: bool) -> tuple:
    out = []
    seen = set()
    for v in vectors:
        r = span.reduce(v)
        if scale_primitive:
            r = primitive(r)
            if r.is_zero:
                continue
        if r.entries not in seen:
            seen.add(r.entries)
            out.append(r)
    out.sort(key=lambda v: v.entries)
    return tuple(out)


def h_to_v(h: HRep) -> Optional[VRep]:
    """Generators of the set cut out by h, or None when it is empty."""
    dim = h.ambient_dim
    eqs = [_hom(a, b) for a, b in h.equalities]
    ineqs = [Vector.unit(dim + 1, 0)]
    ineqs += [_hom(a, b) for a, b in h.inequalities]
    lines, rays = dd_cone(dim + 1, eqs, ineqs)

    verts = []
    raydirs = []
    for r in rays:
        r0 = r[0]
        if r0 > 0:
            verts.append(r.scale(QONE / r0).block(1, dim + 1))
        elif r0 == 0:
            raydirs.append(r.block(1, dim + 1))
        else:  # pragma: no cover - the x0 >= 0 constraint forbids this
            raise InternalCheckError("homogenization ray with negative leading coordinate")
    linedirs = []
    for l in lines:
        if l[0] != 0:  # pragma: no cover
            raise InternalCheckError("homogenization line with nonzero leading coordinate")
        linedirs.append(l.block(1, dim + 1))

    if not verts:
        return None
    span, basis = _canonical_lines(dim, linedirs)
    return VRep(
        dim,
        _reduce_sorted(verts, span, scale_primitive=False),
        _reduce_sorted(raydirs, span, scale_primitive=True),
        basis,
    )


def v_to_h(v: VRep) -> HRep:
    """Canonical H-representation of the set generated by v."""
    dim = v.ambient_dim
    if not v.vertices:
        return _empty_h(dim)
    eqs = [Vector((QZERO,) + l.entries) for l in v.lines]
    ineqs = [Vector((QONE,) + p.entries) for p in v.vertices]
    ineqs += [Vector((QZERO,) + r.entries) for r in v.rays]
    dual_lines, dual_rays = dd_cone(dim + 1, eqs, ineqs)

    # dual lines are the implicit equalities <c,x> = -c0
    eq_rows = [list(l.entries[1:]) + [-l[0]] for l in dual_lines]
    eq_rref, _ = rref_rows(eq_rows)
    equalities = tuple(
        (Vector(tuple(row[:dim])), row[dim]) for row in eq_rref
    )
    eq_span = Subspace.span(dim + 1, [Vector(tuple(row)) for row in eq_rref])

    seen = set()
    ineq_list = []
    for r in dual_rays:
        aug = Vector(tuple(r.entries[1:]) + (-r[0],))
        aug = primitive(eq_span.reduce(aug))
        normal = aug.block(0, dim)
        if normal.is_zero:
            continue  # trivially valid after reduction
        if aug.entries not in seen:
            seen.add(aug.entries)
            ineq_list.append((normal, aug[dim]))
    ineq_list.sort(key=lambda c: c[0].entries + (c[1],))
    return HRep(dim, tuple(ineq_list), equalities)


class Polyhedron:
    """A closed convex polyhedron, lazily canonicalized."""

    __slots__ = ("ambient_dim", "_h", "_v", "_done", "_faces_cache")

    def __init__(self, ambient_dim: int, h: Optional[HRep] = None, v: Optional[VRep] = None):
        if h is None and v is None:
            raise InputError("polyhedron needs at least one representation")
        for rep in (h, v):
            if rep is not None and rep.ambient_dim != ambient_dim:
                raise DimensionMismatch(ambient_dim, rep.ambient_dim, "representation")
        cap = limits().dd_dim_cap
        if ambient_dim > cap:
            raise ResourceLimitError(f"ambient dimension {ambient_dim} exceeds cap {cap}")
        self.ambient_dim = ambient_dim
        self._h = h
        self._v = v
        self._done = False
        self._faces_cache = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_h(dim: int, inequalities: Sequence[tuple], equalities: Sequence[tuple] = ()) -> "Polyhedron":
        ineqs = tuple((Vector.of(a) if not isinstance(a, Vector) else a, as_q(b)) for a, b in inequalities)
        eqs = tuple((Vector.of(a) if not isinstance(a, Vector) else a, as_q(b)) for a, b in equalities)
        for a, _ in ineqs + eqs:
            if a.dim != dim:
                raise DimensionMismatch(dim, a.dim, "constraint normal")
        return Polyhedron(dim, h=HRep(dim, ineqs, eqs))

    @staticmethod
    def from_v(dim: int, vertices: Sequence = (), rays: Sequence = (), lines: Sequence = ()) -> "Polyhedron":
        def coerce(seq):
            return tuple(v if isinstance(v, Vector) else Vector.of(v) for v in seq)
        vs, rs, ls = coerce(vertices), coerce(rays), coerce(lines)
        for v in vs + rs + ls:
            if v.dim != dim:
                raise DimensionMismatch(dim, v.dim, "generator")
        if any(r.is_zero for r in rs) or any(l.is_zero for l in ls):
            raise InputError("zero vector is not a valid ray or line direction")
        return Polyhedron(dim, v=VRep(dim, vs, rs, ls))

    @staticmethod
    def empty(dim: int) -> "Polyhedron":
        p = Polyhedron(dim, h=_empty_h(dim), v=_empty_v(dim))
        p._done = True
        return p

    @staticmethod
    def full_space(dim: int) -> "Polyhedron":
        return Polyhedron.from_v(dim, vertices=[Vector.zero(dim)],
                                 lines=[Vector.unit(dim, i) for i in range(dim)])

    @staticmethod
    def point(x) -> "Polyhedron":
        x = x if isinstance(x, Vector) else Vector.of(x)
        return Polyhedron.from_v(x.dim, vertices=[x])

    @staticmethod
    def box(lo, hi) -> "Polyhedron":
        lo = lo if isinstance(lo, Vector) else Vector.of(lo)
        hi = hi if isinstance(hi, Vector) else Vector.of(hi)
        if lo.dim != hi.dim:
            raise DimensionMismatch(lo.dim, hi.dim)
        ineqs = []
        for i in range(lo.dim):
            ineqs.append((Vector.unit(lo.dim, i), lo[i]))
            ineqs.append((-Vector.unit(lo.dim, i), -hi[i]))
        return Polyhedron.from_h(lo.dim, ineqs)

    # -- canonicalization --------------------------------------------------

    def _ensure(self) -> None:
        if self._done:
            return
        if self._h is not None and self._v is not None:
            first = v_to_h(h_to_v(self._h) or _empty_v(self.ambient_dim))
            second = v_to_h(self._v)
            if first != second:
                raise InputError("H- and V-representations describe different sets")
            self._h = first
            self._v = h_to_v(first) or _empty_v(self.ambient_dim)
        elif self._h is not None:
            vr = h_to_v(self._h)
            if vr is None:
                self._h, self._v = _empty_h(self.ambient_dim), _empty_v(self.ambient_dim)
            else:
                self._v = vr
                self._h = v_to_h(vr)
        else:
            if not self._v.vertices:
                self._h, self._v = _empty_h(self.ambient_dim), _empty_v(self.ambient_dim)
            else:
                self._h = v_to_h(self._v)
                vr = h_to_v(self._h)
                if vr is None:  # pragma: no cover
                    raise InternalCheckError("nonempty V-rep converted to empty H-rep")
                self._v = vr
        self._done = True

    @property
    def h(self) -> HRep:
        self._ensure()
        return self._h

    @property
    def v(self) -> VRep:
        self._ensure()
        return self._v

    @property
    def is_empty(self) -> bool:
        return len(self.v.vertices) == 0

    def canonical_key(self) -> tuple:
        h = self.h
        return (
            tuple((a.entries, b) for a, b in h.equalities),
            tuple((a.entries, b) for a, b in h.inequalities),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.canonical_key()))

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Polyhedron(dim={self.ambient_dim}, empty)"
        v = self.v
        return (f"Polyhedron(dim={self.ambient_dim}, vertices={len(v.vertices)}, "
                f"rays={len(v.rays)}, lines={len(v.lines)})")

    # -- membership --------------------------------------------------------

    def contains_point(self, x, mode: str = "boundary") -> bool:
        """Exact membership; mode 'relative_interior' makes facets strict."""
        x = x if isinstance(x, Vector) else Vector.of(x)
        if x.dim != self.ambient_dim:
            raise DimensionMismatch(self.ambient_dim, x.dim)
        if mode not in ("boundary", "relative_interior"):
            raise InputError(f"unknown membership mode {mode!r}")
        h = self.h
        for a, b in h.equalities:
            if a.dot(x) != b:
                return False
        for a, b in h.inequalities:
            s = a.dot(x)
            if mode == "boundary":
                if s < b:
                    return False
            else:
                if s <= b:
                    return False
        return True


def dd_convert(p: Polyhedron) -> Polyhedron:
    """Force both canonical representations to exist (identity on the set)."""
    p._ensure()
    return p


def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(p.ambient_dim, q.ambient_dim, "polyhedron")
    return Polyhedron(p.ambient_dim, h=HRep(
        p.ambient_dim,
        p.h.inequalities + q.h.inequalities,
        p.h.equalities + q.h.equalities,
    ))


def linear_image(p: Polyhedron, m: Matrix) -> Polyhedron:
    """Image of p under x -> M x, computed generator-wise."""
    if m.cols != p.ambient_dim:
        raise DimensionMismatch(p.ambient_dim, m.cols, "matrix columns")
    if p.is_empty:
        return Polyhedron.empty(m.rows)
    v = p.v
    verts = [m.apply(x) for x in v.vertices]
    rays = [m.apply(r) for r in v.rays]
    lines = [m.apply(l) for l in v.lines]
    return Polyhedron(m.rows, v=VRep(
        m.rows,
        tuple(verts),
        tuple(r for r in rays if not r.is_zero),
        tuple(l for l in lines if not l.is_zero),
    ))


def affine_image(p: Polyhedron, m: Matrix, shift: Vector) -> Polyhedron:
    img = linear_image(p, m)
    if img.is_empty:
        return img
    return translate(img, shift)


def translate(p: Polyhedron, t) -> Polyhedron:
    t = t if isinstance(t, Vector) else Vector.of(t)
    if p.is_empty:
        return p
    v = p.v
    return Polyhedron(p.ambient_dim, v=VRep(
        p.ambient_dim, tuple(x + t for x in v.vertices), v.rays, v.lines))


def negate(p: Polyhedron) -> Polyhedron:
    return linear_image(p, Matrix.identity(p.ambient_dim).scale(-1))


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(p.ambient_dim, q.ambient_dim, "polyhedron")
    if p.is_empty or q.is_empty:
        raise InputError("minkowski_sum of an empty polyhedron")
    pv, qv = p.v, q.v
    verts = tuple(a + b for a in pv.vertices for b in qv.vertices)
    return Polyhedron(p.ambient_dim, v=VRep(
        p.ambient_dim, verts, pv.rays + qv.rays, pv.lines + qv.lines))


def product(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    dim = p.ambient_dim + q.ambient_dim
    if p.is_empty or q.is_empty:
        return Polyhedron.empty(dim)
    pv, qv = p.v, q.v
    zp, zq = Vector.zero(p.ambient_dim), Vector.zero(q.ambient_dim)
    return Polyhedron(dim, v=VRep(
        dim,
        tuple(a.concat(b) for a in pv.vertices for b in qv.vertices),
        tuple(r.concat(zq) for r in pv.rays) + tuple(zp.concat(r) for r in qv.rays),
        tuple(l.concat(zq) for l in pv.lines) + tuple(zp.concat(l) for l in qv.lines),
    ))


def rel_interior_point(p: Polyhedron) -> Vector:
    """The vertex centroid nudged by half the average recession direction."""
    if p.is_empty:
        raise InputError("relative interior point of an empty polyhedron")
    v = p.v
    n = len(v.vertices)
    c = Vector.zero(p.ambient_dim)
    for x in v.vertices:
        c = c + x
    c = c.scale(Q(1, n))
    dirs = list(v.rays) + list(v.lines)
    if dirs:
        s = Vector.zero(p.ambient_dim)
        for d in dirs:
            s = s + d
        c = c + s.scale(Q(1, 2 * len(dirs)))
    return c


def affine_hull(p: Polyhedron) -> tuple[Vector, Subspace]:
    if p.is_empty:
        raise InputError("affine hull of an empty polyhedron")
    v = p.v
    base = v.vertices[0]
    dirs = [x - base for x in v.vertices[1:]] + list(v.rays) + list(v.lines)
    return base, Subspace.span(p.ambient_dim, dirs)


def set_dim(p: Polyhedron) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if p.is_empty:
        return -1
    return affine_hull(p)[1].dim


def is_bounded(p: Polyhedron) -> bool:
    v = p.v
    return not v.rays and not v.lines


def recession_cone(p: Polyhedron) -> Polyhedron:
    if p.is_empty:
        raise InputError("recession cone of an empty polyhedron")
    v = p.v
    return Polyhedron.from_v(p.ambient_dim, vertices=[Vector.zero(p.ambient_dim)],
                             rays=v.rays, lines=v.lines)


@dataclass(frozen=True)
class Face:
    poly: Polyhedron
    tight: tuple  # indices into the canonical inequality list


def faces(p: Polyhedron) -> list[Face]:
    """All nonempty faces of p (including p itself), with tight facet sets."""
    if p.is_empty:
        raise InputError("faces of an empty polyhedron")
    if p._faces_cache is not None:
        return p._faces_cache
    h = p.h
    m = len(h.inequalities)
    if m > limits().facet_cap:
        raise ResourceLimitError(f"{m} facets exceed the face enumeration cap")
    result: dict[tuple, Face] = {}
    empty_sets: list[int] = []  # bitmasks known to give empty faces
    for mask in range(1 << m):
        if any((mask & e) == e for e in empty_sets):
            continue
        tight_eqs = tuple(h.inequalities[i] for i in range(m) if mask >> i & 1)
        face = Polyhedron(p.ambient_dim, h=HRep(
            p.ambient_dim, h.inequalities, h.equalities + tight_eqs))
        if face.is_empty:
            empty_sets.append(mask)
            continue
        key = _tight_set(face, h)
        if key not in result:
            result[key] = Face(face, key)
    out = sorted(result.values(), key=lambda f: (len(f.tight), f.tight))
    p._faces_cache = out
    return out


def _tight_set(face: Polyhedron, h: HRep) -> tuple:
    v = face.v
    tight = []
    for i, (a, b) in enumerate(h.inequalities):
        if all(a.dot(x) == b for x in v.vertices) and \
           all(a.dot(r) == 0 for r in v.rays) and \
           all(a.dot(l) == 0 for l in v.lines):
            tight.append(i)
    return tuple(tight)


def piece_subset(p: Polyhedron, q: Polyhedron) -> bool:
    """Exact test p <= q via p's generators against q's constraints."""
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(p.ambient_dim, q.ambient_dim, "polyhedron")
    if p.is_empty:
        return True
    pv, qh = p.v, q.h
    for a, b in qh.equalities:
        if any(a.dot(x) != b for x in pv.vertices):
            return False
        if any(a.dot(r) != 0 for r in pv.rays) or any(a.dot(l) != 0 for l in pv.lines):
            return False
    for a, b in qh.inequalities:
        if any(a.dot(x) < b for x in pv.vertices):
            return False
        if any(a.dot(r) < 0 for r in pv.rays) or any(a.dot(l) != 0 for l in pv.lines):
            return False
    return True


# -- unions ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.holds


class PolySet:
    """A finite union of polyhedra, canonicalized piecewise."""

    __slots__ = ("ambient_dim", "pieces")

    def __init__(self, ambient_dim: int, pieces: tuple):
        self.ambient_dim = ambient_dim
        self.pieces = pieces

    @staticmethod
    def make(dim: int, pieces: Iterable[Polyhedron]) -> "PolySet":
        kept: list[Polyhedron] = []
        for p in pieces:
            if p.ambient_dim != dim:
                raise DimensionMismatch(dim, p.ambient_dim, "piece")
            if not p.is_empty:
                kept.append(p)
        # absorb pieces contained in other pieces
        kept.sort(key=lambda p: p.canonical_key())
        final: list[Polyhedron] = []
        for i, p in enumerate(kept):
            absorbed = False
            for j, q in enumerate(kept):
                if i == j:
                    continue
                if piece_subset(p, q) and not (piece_subset(q, p) and j > i):
                    absorbed = True
                    break
            if not absorbed:
                final.append(p)
        cap = limits().max_pieces
        if len(final) > cap:
            raise ResourceLimitError(f"{len(final)} pieces exceed the cap of {cap}")
        return PolySet(dim, tuple(final))

    @staticmethod
    def of(p: Polyhedron) -> "PolySet":
        return PolySet.make(p.ambient_dim, [p])

    @staticmethod
    def empty(dim: int) -> "PolySet":
        return PolySet(dim, ())

    @staticmethod
    def full(dim: int) -> "PolySet":
        return PolySet.of(Polyhedron.full_space(dim))

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def member(self, x, mode: str = "boundary") -> bool:
        x = x if isinstance(x, Vector) else Vector.of(x)
        return any(p.contains_point(x, mode) for p in self.pieces)

    def __eq__(self, other) -> bool:
        """Structural equality of the canonical piece lists.

        Two PolySets describing the same point set with different piece
        decompositions compare unequal here; use polyset_equal for that.
        """
        if not isinstance(other, PolySet):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pieces))

    def __repr__(self) -> str:
        return f"PolySet(dim={self.ambient_dim}, pieces={len(self.pieces)})"


def polyset_union(s: PolySet, t: PolySet) -> PolySet:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, t.ambient_dim, "set")
    return PolySet.make(s.ambient_dim, s.pieces + t.pieces)


def polyset_intersect(s: PolySet, t: PolySet) -> PolySet:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, t.ambient_dim, "set")
    return PolySet.make(s.ambient_dim, [intersect(p, q) for p in s.pieces for q in t.pieces])


def polyset_minkowski(s: PolySet, t: PolySet) -> PolySet:
    """Minkowski sum; empty if either operand is empty."""
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, t.ambient_dim, "set")
    if s.is_empty or t.is_empty:
        return PolySet.empty(s.ambient_dim)
    return PolySet.make(s.ambient_dim, [minkowski_sum(p, q) for p in s.pieces for q in t.pieces])


def polyset_image(s: PolySet, m: Matrix) -> PolySet:
    return PolySet.make(m.rows, [linear_image(p, m) for p in s.pieces])


def polyset_negate(s: PolySet) -> PolySet:
    return polyset_image(s, Matrix.identity(s.ambient_dim).scale(-1))


def polyset_scale(s: PolySet, c) -> PolySet:
    return polyset_image(s, Matrix.identity(s.ambient_dim).scale(as_q(c)))


def polyset_translate(s: PolySet, t) -> PolySet:
    t = t if isinstance(t, Vector) else Vector.of(t)
    return PolySet.make(s.ambient_dim, [translate(p, t) for p in s.pieces])


def polyset_product(s: PolySet, t: PolySet) -> PolySet:
    dim = s.ambient_dim + t.ambient_dim
    return PolySet.make(dim, [product(p, q) for p in s.pieces for q in t.pieces])


def convex_hull(s: PolySet) -> Polyhedron:
    """Hull of the union, assembled from all piece generators."""
    if s.is_empty:
        raise InputError("convex hull of an empty set")
    verts: list[Vector] = []
    rays: list[Vector] = []
    lines: list[Vector] = []
    for p in s.pieces:
        v = p.v
        verts += list(v.vertices)
        rays += list(v.rays)
        lines += list(v.lines)
    return Polyhedron(s.ambient_dim, v=VRep(s.ambient_dim, tuple(verts), tuple(rays), tuple(lines)))


# -- containment by region splitting ----------------------------------------


class _ChartedPoly:
    """A polyhedron pulled back into the affine chart of the candidate."""

    def __init__(self, base: Vector, basis: tuple, poly: Polyhedron):
        d = len(basis)
        ineqs = []
        eqs = []
        for a, b in poly.h.inequalities:
            ineqs.append((Vector(tuple(a.dot(bv) for bv in basis)), b - a.dot(base)))
        for a, b in poly.h.equalities:
            eqs.append((Vector(tuple(a.dot(bv) for bv in basis)), b - a.dot(base)))
        self.poly = Polyhedron(d, h=HRep(d, tuple(ineqs), tuple(eqs)))


def _strictly_violated_somewhere(rem: Polyhedron, a: Vector, b) -> bool:
    v = rem.v
    if any(a.dot(l) != 0 for l in v.lines):
        return True
    if any(a.dot(r) < 0 for r in v.rays):
        return True
    return any(a.dot(x) < b for x in v.vertices)


def polyset_contains(s: PolySet, p: Polyhedron, *, mode: str = "closure") -> Verdict:
    """Decide p <= union(s) exactly; a failing witness lies in p but not in s.

    The decision runs inside the affine hull of p, where p is full-
    dimensional; remainders of lower dimension are slivers of the closed
    pieces' boundaries and cannot contain points outside the closed union.
    """
    if s.ambient_dim != p.ambient_dim:
        raise DimensionMismatch(s.ambient_dim, p.ambient_dim, "candidate")
    if mode != "closure":
        raise InputError(f"unknown containment mode {mode!r}")
    if p.is_empty:
        return Verdict(True)
    for q in s.pieces:  # fast path
        if piece_subset(p, q):
            return Verdict(True)
    if s.is_empty:
        return Verdict(False, rel_interior_point(p))

    base, span = affine_hull(p)
    basis = span.basis
    d = len(basis)
    chart_p = _ChartedPoly(base, basis, p).poly
    chart_pieces = [_ChartedPoly(base, basis, q).poly for q in s.pieces]
    chart_pieces = [q for q in chart_pieces if not q.is_empty]

    budget = [limits().branch_cap]

    def back(t: Vector) -> Vector:
        x = base
        for c, bv in zip(t.entries, basis):
            x = x + bv.scale(c)
        return x

    def covered(rem: Polyhedron, idx: int) -> Optional[Vector]:
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceLimitError("region splitting exceeded the branch cap")
        if rem.is_empty or set_dim(rem) < d:
            return None
        if idx == len(chart_pieces):
            return rel_interior_point(rem)
        q = chart_pieces[idx]
        constraints = list(q.h.inequalities)
        for a, b in q.h.equalities:
            constraints.append((a, b))
            constraints.append((-a, -b))
        actives = [(a, b) for a, b in constraints if _strictly_violated_somewhere(rem, a, b)]
        if not actives:
            return None  # rem is inside q
        kept: list[tuple] = []
        for a, b in actives:
            piece = Polyhedron(d, h=HRep(
                d,
                rem.h.inequalities + tuple(kept) + ((-a, -b),),
                rem.h.equalities,
            ))
            w = covered(piece, idx + 1)
            if w is not None:
                return w
            kept.append((a, b))
        return None

    w = covered(chart_p, 0)
    if w is None:
        return Verdict(True)
    return Verdict(False, back(w))


def polyset_equal(s: PolySet, t: PolySet) -> Verdict:
    """Exact set equality of two unions; witness lies in one side only."""
    for p in s.pieces:
        v = polyset_contains(t, p)
        if not v.holds:
            return v
    for q in t.pieces:
        v = polyset_contains(s, q)
        if not v.holds:
            return v
    return Verdict(True)


def sample_point(p: Polyhedron, rng) -> Vector:
    """A random rational point of p: convex vertex mix plus cone directions."""
    if p.is_empty:
        raise InputError("sampling from an empty polyhedron")
    v = p.v
    weights = [Q(rng.randint(0, 8)) for _ in v.vertices]
    if sum(weights) == 0:
        weights[rng.randrange(len(weights))] = QONE
    total = sum(weights, QZERO)
    x = Vector.zero(p.ambient_dim)
    for w, vert in zip(weights, v.vertices):
        x = x + vert.scale(w / total)
    for r in v.rays:
        x = x + r.scale(Q(rng.randint(0, 6), rng.randint(1, 3)))
    for l in v.lines:
        x = x + l.scale(Q(rng.randint(-6, 6), rng.randint(1, 3)))
    return x

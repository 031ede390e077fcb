"""Exact linear algebra over the rationals.

Vectors and matrices hold arbitrary-precision rationals (gmpy2's mpq when
available, else `fractions.Fraction`; both keep lowest terms and a positive
denominator).  Subspaces are canonicalized to a reduced-row-echelon basis so
equal subspaces compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, InputError

try:  # pragma: no cover - exercised implicitly by whichever backend is present
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


def as_q(value) -> "Q":
    """Coerce an int, a string like '3/7', or a rational to a rational.

    Floats are rejected: the whole package is exact.
    """
    if isinstance(value, float):
        raise InputError(f"refusing float {value!r}; use ints or 'p/q' strings")
    if isinstance(value, (int, str)):
        try:
            return Q(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {value!r}") from exc
    return Q(value)


def q_str(value) -> str:
    """Render a rational as 'p' or 'p/q'."""
    num, den = value.numerator, value.denominator
    return str(num) if den == 1 else f"{num}/{den}"


@dataclass(frozen=True)
class Vector:
    entries: tuple

    @staticmethod
    def of(values: Iterable) -> "Vector":
        return Vector(tuple(as_q(v) for v in values))

    @staticmethod
    def zero(dim: int) -> "Vector":
        return Vector((QZERO,) * dim)

    @staticmethod
    def unit(dim: int, i: int) -> "Vector":
        return Vector(tuple(QONE if j == i else QZERO for j in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.entries))

    def scale(self, c) -> "Vector":
        c = as_q(c)
        return Vector(tuple(c * a for a in self.entries))

    def dot(self, other: "Vector"):
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), QZERO)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def concat(self, other: "Vector") -> "Vector":
        return Vector(self.entries + other.entries)

    def block(self, start: int, end: int) -> "Vector":
        return Vector(self.entries[start:end])

    def _check(self, other: "Vector") -> None:
        if len(self.entries) != len(other.entries):
            raise DimensionMismatch(len(self.entries), len(other.entries))

    def __str__(self) -> str:
        return "(" + ",".join(q_str(a) for a in self.entries) + ")"


def primitive(v: Vector) -> Vector:
    """Scale by a positive rational so entries are coprime integers.

    The zero vector is returned unchanged.  Orientation is preserved, so this
    canonicalizes rays; for lines normalize the sign separately.
    """
    if v.is_zero:
        return v
    mult = 1
    for a in v.entries:
        d = a.denominator
        mult = mult * d // gcd(mult, int(d))
    ints = [int(a * mult) for a in v.entries]
    g = 0
    for n in ints:
        g = gcd(g, abs(n))
    return Vector(tuple(Q(n // g) for n in ints))


def sign_normalized(v: Vector) -> Vector:
    """Flip sign so the first nonzero entry is positive (line canonical form)."""
    for a in v.entries:
        if a != 0:
            return v if a > 0 else -v
    return v


@dataclass(frozen=True)
class Matrix:
    rows_data: tuple  # tuple of row tuples

    @staticmethod
    def of(rows: Sequence[Sequence]) -> "Matrix":
        data = tuple(tuple(as_q(x) for x in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise InputError("ragged matrix rows")
        return Matrix(data)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(tuple(tuple(QONE if i == j else QZERO for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        return Matrix(tuple((QZERO,) * c for _ in range(r)))

    @staticmethod
    def from_columns(cols: Sequence[Vector]) -> "Matrix":
        if not cols:
            return Matrix(())
        return Matrix.of([[col[i] for col in cols] for i in range(cols[0].dim)])

    @staticmethod
    def block_diag(a: "Matrix", b: "Matrix") -> "Matrix":
        rows = []
        for r in a.rows_data:
            rows.append(tuple(r) + (QZERO,) * b.cols)
        for r in b.rows_data:
            rows.append((QZERO,) * a.cols + tuple(r))
        return Matrix(tuple(rows))

    @property
    def rows(self) -> int:
        return len(self.rows_data)

    @property
    def cols(self) -> int:
        return len(self.rows_data[0]) if self.rows_data else 0

    def row(self, i: int) -> Vector:
        return Vector(self.rows_data[i])

    def column(self, j: int) -> Vector:
        return Vector(tuple(r[j] for r in self.rows_data))

    def apply(self, v: Vector) -> Vector:
        if v.dim != self.cols:
            raise DimensionMismatch(self.cols, v.dim)
        return Vector(tuple(sum((a * b for a, b in zip(row, v.entries)), QZERO) for row in self.rows_data))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(self.cols, other.rows, "matrix")
        cols = [other.column(j) for j in range(other.cols)]
        return Matrix(tuple(
            tuple(Vector(r).dot(c) for c in cols) for r in self.rows_data
        ))

    def transpose(self) -> "Matrix":
        return Matrix(tuple(tuple(self.rows_data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def scale(self, c) -> "Matrix":
        c = as_q(c)
        return Matrix(tuple(tuple(c * x for x in row) for row in self.rows_data))

    def inverse(self) -> Optional["Matrix"]:
        """Exact inverse, or None when singular (requires a square matrix)."""
        if self.rows != self.cols:
            raise InputError("inverse of a non-square matrix")
        n = self.rows
        cols = []
        for j in range(n):
            sol = solve_linear(self, Vector.unit(n, j))
            if sol is None:
                return None
            part, hom = sol
            if hom.dim > 0:
                return None
            cols.append(part)
        return Matrix.from_columns(cols)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(q_str(x) for x in row) for row in self.rows_data) + "]"


def rref_rows(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with leftmost pivot order.

    Returns (nonzero rows, pivot column indices).  Input rows are not mutated.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = QONE / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n with its canonical RREF basis."""

    ambient_dim: int
    basis: tuple  # tuple of Vector, reduced row echelon rows

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        vecs = list(vectors)
        for v in vecs:
            if v.dim != ambient_dim:
                raise DimensionMismatch(ambient_dim, v.dim)
        rows, _ = rref_rows([list(v.entries) for v in vecs])
        return Subspace(ambient_dim, tuple(Vector(tuple(r)) for r in rows))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.span(ambient_dim, [Vector.unit(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        cols = []
        for row in self.basis:
            for j, x in enumerate(row.entries):
                if x != 0:
                    cols.append(j)
                    break
        return cols

    def reduce(self, v: Vector) -> Vector:
        """Subtract basis components so pivot coordinates of v become zero."""
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(self.ambient_dim, v.dim)
        out = v
        for row, p in zip(self.basis, self.pivots()):
            if out.entries[p] != 0:
                out = out - row.scale(out.entries[p])
        return out

    def contains(self, v: Vector) -> bool:
        return self.reduce(v).is_zero

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)


def solve_linear(a: Matrix, b: Vector) -> Optional[tuple[Vector, Subspace]]:
    """Solve A x = b exactly.

    Returns (particular solution, kernel of A) or None when inconsistent.
    """
    if b.dim != a.rows:
        raise DimensionMismatch(a.rows, b.dim)
    aug = [list(row) + [bv] for row, bv in zip(a.rows_data, b.entries)]
    n = a.cols
    rows, pivots = rref_rows(aug)
    part = [QZERO] * n
    for row, p in zip(rows, pivots):
        if p == n:
            return None  # 0 = 1 row
        part[p] = row[n]
    return Vector(tuple(part)), _kernel_from_rref(n, rows, pivots)


def _kernel_from_rref(ncols: int, rows: list[list], pivots: list[int]) -> Subspace:
    pivot_set = set(p for p in pivots if p < ncols)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [QZERO] * ncols
        v[f] = QONE
        for row, p in zip(rows, pivots):
            if p < ncols:
                v[p] = -row[f]
        basis.append(Vector(tuple(v)))
    return Subspace.span(ncols, basis)


def kernel(a: Matrix) -> Subspace:
    rows, pivots = rref_rows(a.rows_data)
    return _kernel_from_rref(a.cols, rows, pivots)


def orthogonal_complement(s: Subspace) -> Subspace:
    """All vectors orthogonal to every basis vector of s."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel(Matrix.of([list(v.entries) for v in s.basis]))


def affine_hull_points(points: Sequence[Vector]) -> tuple[Vector, Subspace]:
    """Affine hull of a nonempty point set as (base point, direction space)."""
    if not points:
        raise InputError("affine hull of an empty point set")
    base = points[0]
    return base, Subspace.span(base.dim, [p - base for p in points[1:]])

"""Double description: generators of rational polyhedral cones.

`dd_cone` computes a minimal generator pair (lines, extreme rays) for
{ y : <e, y> = 0 for all equalities, <a, y> >= 0 for all inequalities }.

Constraints are inserted one at a time into a double-description pair.  Rays
carry bitmasks of the inequality constraints they satisfy with equality; the
standard combinatorial adjacency test keeps the ray list minimal, which in
turn keeps the test itself valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import limits
from .errors import ResourceLimitError
from .linalg import Vector, primitive


@dataclass
class _Ray:
    vec: Vector
    mask: int  # bit i set <=> tight on the i-th processed inequality


def _adjacent(p: _Ray, n: _Ray, rays: list[_Ray]) -> bool:
    t = p.mask & n.mask
    for r in rays:
        if r is p or r is n:
            continue
        if (r.mask & t) == t:
            return False
    return True


def dd_cone(dim: int, equalities: Sequence[Vector], inequalities: Sequence[Vector]) -> tuple[list[Vector], list[Vector]]:
    """Generator pair (lines, rays) of the cone cut out by the constraints."""
    lines: list[Vector] = [Vector.unit(dim, i) for i in range(dim)]
    rays: list[_Ray] = []
    ineq_index = 0
    cap = limits().dd_ray_cap

    work: list[tuple[Vector, bool]] = [(e, True) for e in equalities]
    work += [(a, False) for a in inequalities]

    for a, is_eq in work:
        if a.is_zero:
            continue
        # lineality absorption: a line not orthogonal to the constraint
        pivot_idx = None
        for idx, l in enumerate(lines):
            if a.dot(l) != 0:
                pivot_idx = idx
                break
        if pivot_idx is not None:
            pivot = lines[pivot_idx]
            if a.dot(pivot) < 0:
                pivot = -pivot
            sp = a.dot(pivot)
            rest = [l for idx, l in enumerate(lines) if idx != pivot_idx]
            lines = [l - pivot.scale(a.dot(l) / sp) for l in rest]
            lines = [l for l in lines if not l.is_zero]
            for r in rays:
                sr = a.dot(r.vec)
                if sr != 0:
                    r.vec = primitive(r.vec - pivot.scale(sr / sp))
                if not is_eq:
                    # every surviving ray is now tight on this constraint
                    r.mask |= 1 << ineq_index
            if not is_eq:
                # the absorbed direction survives on the feasible side, tight on
                # every earlier inequality (it came from the lineality space)
                full = (1 << ineq_index) - 1
                rays.append(_Ray(primitive(pivot), full))
                ineq_index += 1
            continue

        pos = [r for r in rays if a.dot(r.vec) > 0]
        zero = [r for r in rays if a.dot(r.vec) == 0]
        neg = [r for r in rays if a.dot(r.vec) < 0]
        new_rays: list[_Ray] = []
        for p in pos:
            for n in neg:
                if not _adjacent(p, n, rays):
                    continue
                combo = n.vec.scale(a.dot(p.vec)) - p.vec.scale(a.dot(n.vec))
                if combo.is_zero:
                    continue
                new_rays.append(_Ray(primitive(combo), p.mask & n.mask))
        if is_eq:
            rays = zero + new_rays
        else:
            bit = 1 << ineq_index
            ineq_index += 1
            for r in zero:
                r.mask |= bit
            for r in new_rays:
                r.mask |= bit
            rays = pos + zero + new_rays
        if len(rays) > cap:
            raise ResourceLimitError(f"double description exceeded {cap} intermediate rays")

    return lines, [r.vec for r in rays]

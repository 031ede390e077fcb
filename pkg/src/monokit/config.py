"""Resource limits for the exponential polyhedral routines.

The limits live in a module-level record so the command line and tests can
adjust them without threading a parameter through every call.  `max_dim`
bounds the dimension of the spaces that operators and user-facing sets live
in; internal constructions (operator graphs, pairwise embeddings) are allowed
proportionally more room, see `dd_dim_cap`.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass
class Limits:
    max_dim: int = 6          # ambient dimension of operator / point spaces
    max_pieces: int = 64      # pieces per polyhedral set
    branch_cap: int = 10_000  # region-splitting branches per containment query
    probe_budget: int = 64    # probe points per 3*-monotonicity sweep
    dd_ray_cap: int = 20_000  # intermediate rays per double-description run
    facet_cap: int = 18       # facets a polyhedron may have before face enumeration refuses

    @property
    def dd_dim_cap(self) -> int:
        # graphs live in 2n, pairwise embeddings in up to 4n, plus homogenization
        return 4 * self.max_dim + 2


_current = Limits()


def limits() -> Limits:
    return _current


def set_limits(**kwargs) -> Limits:
    """Replace selected limits globally; returns the new record."""
    global _current
    _current = replace(_current, **kwargs)
    return _current


@contextmanager
def scoped_limits(**kwargs):
    """Temporarily override limits (used by tests and the CLI runner)."""
    global _current
    saved = _current
    _current = replace(_current, **kwargs)
    try:
        yield _current
    finally:
        _current = saved

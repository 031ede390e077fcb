"""Error hierarchy shared across the package."""

from __future__ import annotations


class MonokitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MonokitError, ValueError):
    """Malformed or out-of-contract input (bad literals, bad shapes)."""


class DimensionMismatch(InputError):
    """Operands live in different ambient spaces."""

    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected = expected
        self.got = got
        super().__init__(f"dimension mismatch: {what} has dimension {got}, expected {expected}")


class PreconditionError(MonokitError):
    """A documented precondition of an operation failed a runtime check."""


class ResourceLimitError(MonokitError):
    """A configured cap (dimension, pieces, branches, rays) was exceeded."""


class IncompleteAnalysisError(ResourceLimitError):
    """An exact analysis hit a cap and declined to return a possibly wrong verdict."""


class InternalCheckError(MonokitError):
    """An identity that holds by construction failed; indicates a bug."""

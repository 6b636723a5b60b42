"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "BlockseqError",
    "InvalidInputError",
    "PreconditionError",
    "BudgetExceededError",
    "SearchFailedError",
    "IndeterminateGeometryError",
]


class BlockseqError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(BlockseqError, ValueError):
    """Malformed input: bad shapes, duplicate values, out-of-range indices,
    degenerate geometry (collinear triples, repeated coordinates)."""


class PreconditionError(BlockseqError, ValueError):
    """A documented size/parameter precondition does not hold."""


class BudgetExceededError(BlockseqError, RuntimeError):
    """A brute-force oracle refused to run because the instance is too large."""


class SearchFailedError(BlockseqError, RuntimeError):
    """An internal search that is guaranteed to succeed on valid input failed;
    indicates a bug or an input violating an undeclared assumption."""


class IndeterminateGeometryError(BlockseqError, RuntimeError):
    """A numeric geometric test fell inside the tolerance band and cannot be
    decided (near-tangency of arcs)."""

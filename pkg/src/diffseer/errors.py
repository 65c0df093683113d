"""Exception types raised by the engine.

Every error the library raises deliberately derives from :class:`DiffseerError`,
so callers (CLI, HTTP service) can map "user/data problem" uniformly.
"""

from __future__ import annotations


class DiffseerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraphError(DiffseerError):
    """A dynamic graph failed structural validation.

    Carries the list of :class:`~diffseer.model.Violation` records.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:5])
        if len(self.violations) > 5:
            summary += f"; ... ({len(self.violations)} total)"
        super().__init__(f"invalid graph: {summary}")


class IndexMismatchError(DiffseerError):
    """A diff was applied to a snapshot it does not follow."""


class UnknownNodeError(DiffseerError):
    """A node id is not part of the dataset's node universe."""


class ParseError(DiffseerError):
    """An input stream could not be parsed. Carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class EmptyInputError(DiffseerError):
    """An input stream contained no usable records."""


class InsufficientDataError(DiffseerError):
    """A time-series table is too short for the requested window."""


class NonFiniteValueError(DiffseerError):
    """A numeric input was NaN or infinite where finiteness is required."""


class RangeError(DiffseerError):
    """A transition/timeslice range is out of bounds or inverted."""


class DomainError(DiffseerError):
    """A numeric parameter is outside its documented domain."""


class DimensionError(DiffseerError):
    """Matrix dimensions do not match what an operation requires."""


# The distance pipeline reports shape disagreements under this name.
DimensionMismatchError = DimensionError


class AlphaOutOfRangeError(DiffseerError):
    """The blend weight must lie in [0, 1]."""


class NodeSetMismatchError(DiffseerError):
    """Two distance matrices do not cover the same node ids."""


class NonFiniteDistanceError(DiffseerError):
    """A distance matrix contains NaN or infinite entries."""

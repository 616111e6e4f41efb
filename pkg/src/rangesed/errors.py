"""Exception types shared across the package."""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for geometric failures."""


class CollinearInput(GeometryError):
    """Three collinear points were given where a proper triangle is required."""


class HullsOverlap(GeometryError):
    """Two hulls intersect where disjoint hulls are required."""


class NoVertices(GeometryError):
    """A diagram has no vertices to search over."""


class InconsistentOracle(GeometryError):
    """An oracle answer contradicts the search invariants."""


class TooLarge(GeometryError):
    """Input exceeds a hard size limit of a brute-force routine."""


class EmptyInput(GeometryError):
    """A structure was asked to build over no points."""


class EmptyQuery(GeometryError):
    """A query rectangle contains no points."""


class TooFewPoints(GeometryError):
    """A rendering needs at least two points to draw anything useful."""


class ParseError(ValueError):
    """Malformed input text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

"""Exception types shared across the package."""

from __future__ import annotations


class MetaplexError(Exception):
    """Base class for every error raised by this package."""


class EmptyVertexList(MetaplexError):
    """A simplex was requested from an empty vertex collection."""


class DuplicateVertex(MetaplexError):
    """A vertex id appeared more than once where a set was expected."""


class VertexOutOfRange(MetaplexError):
    """A vertex id falls outside the declared vertex range."""


class ZeroDimensionalSimplex(MetaplexError):
    """The boundary of a vertex was requested; by convention this is a bug."""


class SimplexNotInComplex(MetaplexError):
    """An operation referenced a simplex the complex does not contain."""


class DimensionMismatch(MetaplexError):
    """Two simplices of different dimensions were compared at one level."""


class EmptyLevel(MetaplexError):
    """A per-dimension operation hit a dimension with no simplices."""


class AllZeroWeights(MetaplexError):
    """An internal structure carries no positive weight at all."""


class SchemeInvalid(MetaplexError):
    """A contribution scheme violates one of its defining axioms."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class WeightNotAssigned(MetaplexError):
    """A simplex weight was read before it was assigned."""


class MissingConcentration(MetaplexError):
    """Some active vertices have no concentration entry."""

    def __init__(self, vertices):
        self.vertices = sorted(vertices)
        super().__init__(f"no concentration for vertices {self.vertices}")


class NotAdjacent(MetaplexError):
    """A step cost was requested for a non-adjacent simplex pair."""


class InstanceTooLarge(MetaplexError):
    """A brute-force reference was asked to run beyond its size guard."""


class ParseError(MetaplexError):
    """An input file failed to parse; carries the offending location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class SchemeAxiomViolation(MetaplexError):
    """An explicit scheme table is malformed at load time."""

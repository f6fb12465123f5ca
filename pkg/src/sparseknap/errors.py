"""Exception hierarchy shared by all sparseknap modules."""

from __future__ import annotations


class SparseknapError(Exception):
    """Base class for all errors raised by this package."""


class KnapsackError(SparseknapError, ValueError):
    """Invalid knapsack data."""


class NonPositiveWeight(KnapsackError):
    """Some item weight is zero or negative."""


class WeightExceedsCapacity(KnapsackError):
    """Some item alone does not fit, i.e. its weight exceeds the capacity."""


class TrivialKnapsack(KnapsackError):
    """All items together fit, so the constraint excludes nothing."""


class Overflow(SparseknapError, OverflowError):
    """A weight sum or product left the checked 64-bit integer range."""


class OverlappingGroups(SparseknapError, ValueError):
    """Two bound groups share an index."""


class UncoveredIndex(SparseknapError, ValueError):
    """Bound groups do not cover every item index."""


class InvalidFractionalPoint(SparseknapError, ValueError):
    """A point entry lies outside [0, 1] beyond tolerance, or has bad shape."""


class TupleExceedsClass(SparseknapError, ValueError):
    """A class tuple requests more items than a weight class holds."""


class DimensionMismatch(SparseknapError, ValueError):
    """Vector length does not match the expected dimension."""


class TooLarge(SparseknapError):
    """Instance exceeds a hard size guard of an exhaustive routine."""


class InvalidCut(SparseknapError, ValueError):
    """An operation that requires a valid inequality got an invalid one."""


class CertificateInfeasible(SparseknapError):
    """Constructed dual certificate failed verification; indicates a bug."""


class NameCollision(SparseknapError, ValueError):
    """Two model entities were given the same name."""

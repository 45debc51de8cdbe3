"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SimplextError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SimplextError):
    """Malformed or inconsistent input data."""


class BudgetError(SimplextError):
    """An enumeration budget would be exceeded."""


class Unbounded(InputError):
    pass


class Infeasible(InputError):
    pass


class TooLarge(BudgetError):
    pass


class ToleranceFailure(SimplextError):
    """Floating point incidence could not be decided unambiguously."""


class EmptyIntersection(InputError):
    pass


class NotPointed(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class OutOfRange(InputError):
    pass


class BadW(InputError):
    pass


class InconsistentWitness(InputError):
    """The claimed extension does not project onto the target polytope."""


class ModeInapplicable(SimplextError):
    """A lower-bound shortcut was requested but its hypothesis fails."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class NotAdjacent(InputError):
    pass


class NotAdjacentBase(NotAdjacent):
    """The first two matchings of a triple are not adjacent."""


class PairwiseAdjacent(SimplextError):
    """Raised by the good-matching construction when its hypothesis fails."""


class InternalInvariantViolation(SimplextError):
    """A proven invariant failed at run time: always a bug."""

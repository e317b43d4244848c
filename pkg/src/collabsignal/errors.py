"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError -> 2, CapacityError -> 3,
VerificationError -> 4.
"""


class CollabSignalError(Exception):
    """Base class for all package errors."""


class InputError(CollabSignalError):
    """A caller-supplied value violates a documented precondition."""


class CapacityError(CollabSignalError):
    """An exact oracle was asked for an instance above its size cap."""


class VerificationError(CollabSignalError):
    """A certificate or constructed object failed its correctness check."""


class UnsupportedExact(CollabSignalError):
    """A scheme component has no closed-form moments on this graph."""


class NoImprovementPossible(CollabSignalError):
    """Strict-improvement construction requested but the benchmark gap is zero."""


class LPError(CollabSignalError):
    """The LP solver reported infeasible/unbounded where neither was expected."""

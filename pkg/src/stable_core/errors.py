"""Exception types shared across the package."""


class StableCoreError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(StableCoreError, ValueError):
    """A preference-instance or matching text is malformed."""


class NotAPermutationError(StableCoreError, ValueError):
    """A preference list or matching is not a permutation of the opposite side."""


class SizeMismatchError(StableCoreError, ValueError):
    """A list or matching does not have the declared market size."""


class IdOutOfRangeError(StableCoreError, ValueError):
    """A worker or firm id lies outside [0, n)."""


class SizeTooLargeError(StableCoreError, ValueError):
    """The market is too large for an exhaustive operation."""


class VertexDeletedError(StableCoreError, ValueError):
    """An operation required a surviving grid cell, but it was deleted."""


class InvalidPivotError(StableCoreError, ValueError):
    """A pivot cell has neither a zero row out-degree nor a zero column out-degree."""


class UnclassifiableVertexError(StableCoreError, RuntimeError):
    """A normal-form survivor is neither part of a stable matching nor strictly
    surrounded by stable pairs in both its row and its column.

    This state is provably impossible for a correct reduction, so raising it
    signals an implementation bug rather than bad input.
    """

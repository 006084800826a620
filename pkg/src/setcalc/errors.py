"""Exception types shared across the library."""


class SetcalcError(Exception):
    """Base class for all library-specific errors."""


class DimensionMismatchError(SetcalcError):
    """Operands have incompatible ambient dimensions."""


class UnsupportedOperationError(SetcalcError):
    """The requested operation is not implemented for these arguments."""


class EmptySetError(SetcalcError):
    """An operation that requires a nonempty set received an empty one."""


class UnboundedSetError(SetcalcError):
    """An operation that requires boundedness hit an unbounded set or direction."""


class DegeneratePolygonError(SetcalcError):
    """A polygon collapsed to collinear points where full dimension is required."""


class SamplingBudgetError(SetcalcError):
    """Rejection sampling ran out of its draw budget."""


class DocumentError(SetcalcError):
    """A set-expression document failed to parse or validate."""

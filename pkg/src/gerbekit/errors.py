"""Exception types shared across the library."""


class GerbekitError(ValueError):
    """Base class for all library errors."""


class MalformedCellError(GerbekitError):
    """A cell specification repeats a vertex or is otherwise invalid."""


class UnsupportedDimensionError(GerbekitError):
    """Requested simplex dimension outside the supported range (0..5)."""


class IncompleteFieldError(GerbekitError):
    """A cochain is missing a value on a cell the operation needs."""


class InapplicableGeneratorError(GerbekitError):
    """A 2-cell generator does not apply to the path at the given position."""


class OutOfDomainError(GerbekitError):
    """Matrix logarithm requested outside the injectivity radius."""


class LinearizationDomainError(GerbekitError):
    """A connection value is too far from the identity to linearize."""


class TopologyError(GerbekitError):
    """The complex does not satisfy the topological precondition."""

"""Exception hierarchy shared by all modules."""


class MonogamyLabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MonogamyLabError, ValueError):
    """Input violates a documented invariant."""


class ShapeError(ValidationError):
    """Matrix or vector size does not match the party dimensions."""


class CapacityError(MonogamyLabError):
    """Result would exceed the configured matrix element cap."""


class ConvergenceError(MonogamyLabError, ArithmeticError):
    """Iterative solver hit its iteration cap."""


class UnsupportedInputError(MonogamyLabError, ValueError):
    """The requested quantity has no implemented route for this input."""


class PreconditionError(MonogamyLabError, ValueError):
    """A hypothesis required by the bound does not hold for the input."""


class EstimationError(MonogamyLabError):
    """No usable samples were available for an estimate."""

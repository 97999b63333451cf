"""Exception types raised by the quadrature routines and the CLI."""


class QuadratureError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(QuadratureError, ValueError):
    pass


class InvalidValueError(QuadratureError, ValueError):
    """Non-finite data was passed where finite samples are required."""


class DomainError(QuadratureError, ValueError):
    """Evaluation point outside the interval an object is defined on."""


class InvalidIntervalError(InvalidParameterError):
    pass


class InvalidNodesError(InvalidParameterError):
    pass


class EvaluationError(QuadratureError, ArithmeticError):
    """A user function returned a non-finite value."""


class FallbackRequired(QuadratureError):
    """Raised by the moment recursion when the wavenumber is too small.

    Callers catch this and switch to plain Clenshaw-Curtis weights.
    """


class NotIncreasingError(QuadratureError):
    pass


class OscillatorNotMonotoneError(QuadratureError):
    pass


class SplitRequiredError(QuadratureError):
    pass


class StationaryPointError(QuadratureError):
    pass


class OracleFailure(QuadratureError):
    pass


class ExpressionError(QuadratureError, ValueError):
    """Malformed expression text; ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprSyntaxError(ExpressionError):
    pass


class UnknownIdentifierError(ExpressionError):
    pass

"""Exception types shared across the package."""


class FracopsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FracopsError, ValueError):
    """An argument lies outside the mathematical domain of an operation.

    Raised for parameter-window violations, evaluation at excluded points
    (e.g. z = 0 in the quadrature route), and degenerate inputs such as a
    vanishing denominator series on a sample grid.
    """


class PoleHitError(FracopsError, ArithmeticError):
    """A Gamma-function argument landed on (or within guard distance of) a
    non-positive integer where Gamma has a pole."""

    def __init__(self, argument, message=None):
        self.argument = argument
        super().__init__(message or f"gamma pole at argument {argument!r}")


class ConvergenceError(FracopsError, RuntimeError):
    """An iterative or adaptive numerical process failed to stabilise.

    Carries the last two estimates so callers can inspect how far apart
    they were.
    """

    def __init__(self, message, last=None, previous=None):
        self.last = last
        self.previous = previous
        super().__init__(message)

"""Exception types raised by the simulator."""


class TclGateError(Exception):
    """Base class for all package errors."""


class ConfigError(TclGateError, ValueError):
    """Invalid user input: parameters, initial states, config files."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class QuadratureError(TclGateError, ArithmeticError):
    """A frequency quadrature failed to reach its requested tolerance."""


class NumericalIntegrityError(TclGateError, ArithmeticError):
    """A computed state violates trace, Hermiticity or positivity bounds."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t

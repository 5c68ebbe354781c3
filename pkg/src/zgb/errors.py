"""Exception hierarchy shared by every module.

Exit codes of the command line map onto these classes (see ``zgb.cli``).
"""


class ZGBError(Exception):
    """Base class for all package errors."""


class DomainError(ZGBError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (s = 0 or s = 1)."""


class ParameterError(ZGBError, ValueError):
    """Invalid numerical parameters: window, annulus, grid sizes."""


class SamplingError(ParameterError):
    """An evaluator failed at a node of the quadrature circle."""

    def __init__(self, message, theta=None):
        super().__init__(message)
        self.theta = theta


class CapacityError(ZGBError, ArithmeticError):
    """Requested accuracy or range is beyond what the precision mode delivers."""

    def __init__(self, message, achievable=None):
        super().__init__(message)
        self.achievable = achievable

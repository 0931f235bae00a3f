"""Exception hierarchy shared by every module."""


class HyperDeltaError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(HyperDeltaError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically on) a pole."""


class DegenerateError(DomainError):
    """Quantity is undefined at the requested point (e.g. angle at R = 0)."""


class AccuracyError(HyperDeltaError, ArithmeticError):
    """Requested accuracy cannot be delivered inside the declared budget."""


class ConvergenceError(AccuracyError):
    """An iterative or limiting procedure failed to converge."""


class BracketError(ConvergenceError):
    """Root bracket does not contain a sign change."""

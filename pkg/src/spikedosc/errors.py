"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: precondition violations -> 2,
documented divergence -> 3, numerical non-convergence -> 4.
"""


class SpikedOscError(Exception):
    """Base class for all library errors."""


class DomainError(SpikedOscError, ValueError):
    """An argument is outside the domain of the requested operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole of a gamma-function factor."""


class DivergenceError(SpikedOscError, ArithmeticError):
    """A series is divergent for the given parameters (not a bug: the
    parameters are outside the convergence region)."""


class ConvergenceError(SpikedOscError, RuntimeError):
    """An iterative computation failed to reach its tolerance within the
    configured cap."""


class SlowConvergenceWarning(UserWarning):
    """A series hit its term cap; the returned value carries the (estimated)
    truncation error noted in the warning message."""

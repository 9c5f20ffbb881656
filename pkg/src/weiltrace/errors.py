"""Exception types shared across the package."""


class WeiltraceError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WeiltraceError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class ToleranceError(WeiltraceError):
    """A quadrature or summation could not meet the requested tolerance."""


class WindowError(ToleranceError):
    """Integration window too small for the integrand's effective support."""


class TailBoundError(ToleranceError):
    """A truncated infinite sum could not certify its tail below tolerance."""


class DivergentIntegralError(DomainError):
    """Integral does not converge for the requested parameter."""


class ParityMismatchError(DomainError):
    """Function parity does not match the character's parity."""


class NonPrimitiveCharacterError(DomainError):
    """Operation requires a primitive Dirichlet character."""


class CountMismatchError(WeiltraceError):
    """Zero count disagrees with the counting estimate by more than one."""


class OrderViolationError(WeiltraceError):
    """Zero table entries are not strictly increasing."""


class TableParseError(WeiltraceError):
    """Malformed zero-table file."""

    def __init__(self, message, line_no=None):
        super().__init__(message if line_no is None
                         else f"line {line_no}: {message}")
        self.line_no = line_no


class ImaginaryResidueError(WeiltraceError):
    """A quantity that must be real carries too large an imaginary part."""


class BudgetExceededError(WeiltraceError):
    """Residual exceeds the total certified error budget."""


class DisagreementError(WeiltraceError):
    """Two independent computations of the same quantity disagree."""


class ConfigError(WeiltraceError):
    """Invalid CLI or config-file input."""


class ExpressionError(ConfigError):
    """Malformed function expression."""

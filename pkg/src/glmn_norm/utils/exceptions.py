from typing import Any, Optional


class ConfigError(Exception):
    """Configuration error."""


class CheckFailed(Exception):
    """An identity check did not hold."""


class InternalError(Exception):
    """Unexpected internal inconsistency."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero element of a scalar field."""


class PoleAtZero(ArithmeticError):
    """Rational function has a pole at epsilon = 0."""


class PoleAtPoint(ArithmeticError):
    """Rational function has a pole at the evaluation point."""


class KernelPole(ArithmeticError):
    """Rational kernel evaluated at coinciding arguments."""

    def __init__(
        self,
        message: str,
        pair: Optional[tuple[Any, Any]] = None,
        context: Optional[str] = None,
    ):
        super().__init__(message if context is None else f"{message} ({context})")
        self.pair = pair
        self.context = context


class IndexOutOfRange(IndexError):
    """Color or parameter index out of range."""


class CardinalityMismatch(ValueError):
    """Colored tuples with different per-color cardinalities."""


class ColoringMismatch(ValueError):
    """Colored tuples with different colorings."""


class EmptyColor(ValueError):
    """A color that must be nonempty is empty."""


class DuplicateNode(ValueError):
    """Coinciding parameters where distinct ones are required."""


class SingularJacobian(ArithmeticError):
    """Newton step hit a singular Jacobian."""


class NonConvergence(RuntimeError):
    """Iteration budget exhausted before reaching tolerance."""

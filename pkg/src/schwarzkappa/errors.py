"""Exception hierarchy shared by all modules."""


class KappaError(Exception):
    """Base class for every error raised by this package."""


class JetError(KappaError, ArithmeticError):
    pass


class DivisionByZeroJet(JetError, ZeroDivisionError):
    """Leading coefficient of a divisor (or power base) is numerically zero."""


class OrderExceeded(JetError, IndexError):
    pass


class BasePointMismatch(JetError, ValueError):
    pass


class NonFiniteJet(JetError, ValueError):
    pass


class ParseError(KappaError, ValueError):
    """Syntax error in an expression; ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message, offset, text=None):
        self.message = message
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at byte {offset}")


class EvaluationError(KappaError, ArithmeticError):
    def __init__(self, message, component=None):
        self.component = component
        if component is not None:
            message = f"component {component}: {message}"
        super().__init__(message)


class DegenerateCurve(KappaError, ArithmeticError):
    """f, f', ..., f^(n) are (numerically) linearly dependent at the point."""


class CriticalPoint(KappaError, ArithmeticError):
    """First derivative vanishes where a Schwarzian derivative is needed."""


class CriticalReparameterization(CriticalPoint):
    pass


class ChartEscape(KappaError, ArithmeticError):
    """Transformed curve leaves the affine chart with leading coordinate 1."""

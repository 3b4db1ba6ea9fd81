from typing import Optional


class CoalgebraError(Exception):
    """Base class for every error raised by this package."""


class ArityError(CoalgebraError, ValueError):
    """A modality received the wrong number of arguments."""


class UnknownStateError(CoalgebraError, KeyError):
    """A state is not part of the carrier it is used with."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message instead.
        return str(self.args[0]) if self.args else ""


class CarrierMismatchError(CoalgebraError, ValueError):
    """Arguments live over different carriers."""


class FunctorMismatchError(CoalgebraError, TypeError):
    """A modality, value or coalgebra belongs to another functor."""


class MalformedValueError(CoalgebraError, ValueError):
    """A functor payload cannot be brought into normal form."""


class ConfigurationError(CoalgebraError, ValueError):
    """Invalid functor configuration or coalgebra document."""


class OracleSizeError(CoalgebraError, ValueError):
    """A brute-force oracle was asked to work on too large an input."""


class UnboundVariableError(CoalgebraError, KeyError):
    """Evaluation reached a variable that the valuation does not bind."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class WellFormednessError(CoalgebraError, ValueError):
    """An expression is not closed or not guarded."""


class ExprSyntaxError(CoalgebraError, ValueError):
    """
    Lexical or syntactic error in expression text.

    Attributes:
        message: Human readable description of the problem.
        line: 1-based line of the offending token, if known.
        column: 1-based column of the offending token, if known.
    """
    message: str
    line: Optional[int]
    column: Optional[int]

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        """Initialize the error with an optional source position."""
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        """Render as ``line:column: message`` when the position is known."""
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"

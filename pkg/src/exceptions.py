# -*- coding: utf-8 -*-
"""
Typed errors raised by the painleve-lab engine.

Library code raises these; the command line maps them to exit codes.
Analysis outcomes (UNRESOLVED candidates, LOG_REQUIRED branches, FAILS
verdicts) are reported as values and never raised.
"""

from typing import Optional


class PainleveError(Exception):
    """Base class for every error raised by the engine."""


# --- Exact arithmetic ---
class ExactArithmeticError(PainleveError):
    pass


class FieldTowerError(ExactArithmeticError):
    """Raised when two quadratic irrationalities with different radicands meet."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Cannot combine sqrt({left}) and sqrt({right}) in a single quadratic extension.")


class ExactZeroDivisionError(ExactArithmeticError, ZeroDivisionError):
    pass


class NumberFormatError(PainleveError, ValueError):
    """Malformed exact-number string (rational or quadratic form)."""


# --- Systems ---
class SystemSyntaxError(PainleveError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class NonPolynomialError(SystemSyntaxError):
    pass


class UndeclaredVariableError(SystemSyntaxError):
    pass


class SubstitutionError(PainleveError):
    """The squaring substitution preconditions do not hold."""


# --- Analysis ---
class BalanceError(PainleveError):
    pass


class DegenerateCandidateError(PainleveError):
    """det Q(r) vanishes identically."""


class SeriesError(PainleveError):
    pass


class NondegenerateStepError(SeriesError):
    def __init__(self, step: int):
        self.step = step
        super().__init__(f"det Q({step}) != 0: step {step} is not a resonance step.")


class MissingParameterError(SeriesError, KeyError):
    def __init__(self, name: str, step: Optional[int] = None):
        self.name = name
        self.step = step
        where = f" (introduced at step {step})" if step is not None else ""
        super().__init__(f"No value supplied for free parameter '{name}'{where}.")

    def __str__(self) -> str:
        return self.args[0]


class OrderTooLowError(SeriesError, ValueError):
    pass


class CoefficientRangeError(SeriesError, IndexError):
    pass


class VerificationError(PainleveError):
    pass


class ReportError(PainleveError):
    pass

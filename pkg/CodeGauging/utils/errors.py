"""
Exception types for the CodeGauging System.

Every error is a ValueError so that callers validating user input can catch the
whole family at once. The CLI maps parse errors to exit code 2 and budget errors
to exit code 3.
"""
from typing import Optional


class CodeGaugingError(ValueError):
    """Base class for all CodeGauging errors."""


class DimensionMismatchError(CodeGaugingError):
    """Shapes, lengths or registers disagree."""


class NotARedundancyError(CodeGaugingError):
    """A supplied vector is not in Ker(delta)."""

    def __init__(self, column: int, message: Optional[str] = None):
        self.column = column
        super().__init__(message or f"column {column} is not a redundancy (delta * v != 0)")


class DependentBasisError(CodeGaugingError):
    """A supplied basis is linearly dependent."""


class ChainComplexError(CodeGaugingError):
    """Boundary maps do not compose to zero, or an input is not a (co)cycle."""


class NonCommutingError(CodeGaugingError):
    """Two operators that must commute anticommute."""

    def __init__(self, first: int, second: int, message: Optional[str] = None):
        self.pair = (first, second)
        super().__init__(message or f"operators {first} and {second} anticommute")


class SymplecticViolationError(CodeGaugingError):
    """Generator images do not preserve the symplectic form."""


class SymmetryViolationError(CodeGaugingError):
    """An operator lies outside the symmetric algebra of a code."""

    def __init__(self, logical: int, message: Optional[str] = None):
        self.logical = logical
        super().__init__(message or f"operator anticommutes with logical {logical}")


class ResidualRedundancyError(CodeGaugingError):
    """Redundancies remain where none are allowed."""


class BudgetExceededError(CodeGaugingError):
    """An exact computation was requested beyond its enumeration cap."""


class CodeFileError(CodeGaugingError):
    """A code file could not be read."""


class AlistParseError(CodeFileError):
    """Malformed alist text, with the offending 1-indexed line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")

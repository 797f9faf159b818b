"""Exception hierarchy.

Input problems derive from ValueError, broken internal guarantees from
RuntimeError, so callers that only know the builtins still catch them.
"""

from __future__ import annotations

from typing import Optional


class LpaError(Exception):
    """Base class for every error raised by this package."""


class GraphError(LpaError, ValueError):
    """Unknown identifier or violated graph invariant."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ExpressionError(LpaError, ValueError):
    def __init__(self, message: str, column: Optional[int] = None) -> None:
        self.column = column
        if column is not None:
            message = f"column {column}: {message}"
        super().__init__(message)


class MismatchError(LpaError, ValueError):
    """Elements over different graphs or rings were combined."""


class ValidationError(LpaError, ValueError):
    def __init__(self, message: str, report=None) -> None:
        self.report = report
        super().__init__(message)


class UnverifiedFamilyError(LpaError, RuntimeError):
    pass


class FactorizationError(LpaError, RuntimeError):
    """A path in MM* did not split into B-segments; indicates a bug."""


class ZeroElementError(LpaError, ValueError):
    """An operation that needs a nonzero element was handed zero."""

"""Exception hierarchy.

The CLI maps these onto exit codes: validation problems exit 1, agreement
or property failures exit 2, resource caps exit 3.
"""


class HigherExtError(Exception):
    pass


# -- validation (exit 1) ---------------------------------------------------

class ValidationError(HigherExtError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, line: int = 1, column: int = 1, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class ParentMismatch(ValidationError):
    pass


class NotPermutable(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class CompositionMismatch(ValidationError):
    pass


class NonCommutingSquare(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NotAnExtension(ValidationError):
    pass


class UnsupportedDatum(ValidationError):
    pass


# -- agreement (exit 2) ----------------------------------------------------

class AgreementFailure(HigherExtError):
    """Two independent computations of the same quantity disagree."""


# -- resources (exit 3) ----------------------------------------------------

class ResourceCapError(HigherExtError):
    pass


class ClosureCapExceeded(ResourceCapError):
    pass


class CapExceeded(ResourceCapError):
    pass


class DimCapExceeded(ResourceCapError):
    pass


class BudgetExceeded(ResourceCapError):
    pass


class OverflowDetected(ResourceCapError):
    pass

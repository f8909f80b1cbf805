"""Exception hierarchy shared by the library, the CLI and the HTTP service"""
from typing import Optional


class ArthomError(ValueError):
    """Base class for every error raised on purpose by arthom"""


class ParseError(ArthomError):
    """Syntax error in an algebra file, reported with its position"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class FieldMismatchError(ArthomError):
    pass


class AlgebraMismatchError(ArthomError):
    pass


class ShapeError(ArthomError):
    pass


class UnknownVertexError(ArthomError):
    pass


class UnknownModuleError(ArthomError):
    pass


class RelationViolationError(ArthomError):
    """A representation does not satisfy one of the algebra's relations"""

    def __init__(self, relation: str):
        self.relation = relation
        super().__init__(f"relation violated: {relation}")


class NonAdmissibleError(ArthomError):
    pass


class CapExceededError(ArthomError):
    """A configured cap was reached before a computation finished"""

    def __init__(self, message: str, cap: int):
        self.cap = cap
        super().__init__(f"{message} (cap={cap})")


class PreconditionError(ArthomError):
    """A documented precondition of an operation does not hold"""

    def __init__(self, name: str, detail: Optional[str] = None):
        self.name = name
        message = f"precondition failed: {name}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class ApproximationError(ArthomError):
    pass


class EnumerationUnavailableError(ArthomError):
    pass


class NotGorensteinError(ArthomError):
    pass


class DefectError(ArthomError):
    """Internal consistency check failed; always a bug, never bad input"""

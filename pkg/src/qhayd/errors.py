"""Exception hierarchy shared across the package."""


class QhaydError(Exception):
    """Base class for all package errors."""


class ShapeError(QhaydError):
    """Dimension/shape mismatch or malformed input document."""


class FieldMismatchError(QhaydError):
    """Two values from different scalar fields were combined."""


class InconsistentSystemError(QhaydError):
    """A linear system that an operation requires to be solvable has no solution."""


class BudgetExceededError(QhaydError):
    """An enumeration would exceed the configured candidate budget."""

    def __init__(self, affine_dim: int, count: int, budget: int):
        self.affine_dim = affine_dim
        self.count = count
        self.budget = budget
        super().__init__(
            f"enumeration needs {count} candidates "
            f"(affine dimension {affine_dim}) but budget is {budget}"
        )


class DslParseError(QhaydError):
    """Syntax or binding error in a Sweedler-notation source, with a source span."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        self.span = span
        if span is not None:
            message = f"{message} (at columns {span[0]}..{span[1]})"
        super().__init__(message)

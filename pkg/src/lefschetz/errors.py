"""Error taxonomy shared by the library, the service and the CLI.

Three failure families map onto CLI exit codes: invalid input (3), blown
resource bounds (2), and mismatches against pinned published values (4).
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Input that fails structural validation (parse errors, bad tables)."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class ResourceBoundExceeded(RuntimeError):
    """A configured size/time bound was hit before the computation finished."""

    def __init__(self, message: str, *, bound_name: str | None = None, bound_value: int | None = None):
        self.bound_name = bound_name
        self.bound_value = bound_value
        super().__init__(message)


class PinnedValueMismatch(AssertionError):
    """A computed value disagrees with a pinned published value.

    Raised only by explicit cross-checks (euler_crosscheck hard mode, label
    pin validation, report --expect); never used to silence a computation.
    """


class IncompleteSearch(RuntimeError):
    """Internal invariant failure in a search (indicates a bug, not bad input)."""

"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """A value or argument violates a documented precondition."""


class BoundExceededError(RuntimeError):
    """A computation was refused because it exceeds a configured size bound."""


class ParseError(InputError):
    """A text input could not be parsed; carries the offending position."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")

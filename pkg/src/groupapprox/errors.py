"""Shared exception types.

The CLI maps these onto exit codes: parse/validation problems exit 1,
cap/budget exhaustion exits 2.
"""


class WorkbenchError(Exception):
    pass


class CapExceeded(WorkbenchError):
    """An enumeration or intermediate set grew past its configured cap."""


class BudgetExceeded(WorkbenchError):
    """A search ran out of its assignment budget before exhausting the space."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}


class ParseError(WorkbenchError):
    """Malformed text input, with a best-effort source position."""

    def __init__(self, message, line=None, column=None, source=None):
        self.bare_message = message
        self.line = line
        self.column = column
        self.source = source
        loc = ""
        if source is not None:
            loc += f"{source}:"
        if line is not None:
            loc += f"{line}:"
            if column is not None:
                loc += f"{column}:"
        super().__init__(f"{loc} {message}" if loc else message)

"""Exception hierarchy shared by the library and the CLI."""


class CVMError(Exception):
    """Base class for all cvm2d errors."""


class InputError(CVMError, ValueError):
    """Invalid input data (pattern files, lattice shapes, option values)."""


class PatternError(InputError):
    """Malformed pattern text. Carries the offending line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DomainError(CVMError, ValueError):
    """A numeric argument lies outside the domain where a formula is valid."""

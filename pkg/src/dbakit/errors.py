"""Shared exception types."""


class DbakitError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DbakitError):
    """Malformed text input.  Carries a 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class AlgebraError(DbakitError):
    """Structurally invalid algebra, or an algebra outside an operation's domain."""


class EvalError(DbakitError):
    """Term evaluation failed, e.g. an unbound variable."""


class SuiteError(DbakitError):
    """Unknown axiom-suite name."""


class BudgetError(DbakitError):
    """A search or enumeration exceeded its configured budget."""


class ConstructionError(DbakitError):
    """Invalid input to an algebra construction (broken retraction, bad overlap...)."""


class LogicError(DbakitError):
    """Invalid input to the calculus machinery (wrong algebra class, bad script...)."""

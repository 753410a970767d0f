"""Exception types shared across the toolkit."""


class ParseError(ValueError):
    """Malformed textual input. Carries optional 1-based line/column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line})" if column is None else f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)


class MultilinearityError(ValueError):
    """Identity rejected: some additive term does not use every free variable exactly once."""


class PreconditionError(ValueError):
    """A construction was invoked on inputs that violate its stated preconditions."""


class ExponentLimitError(PreconditionError):
    """Derived-algebra order exceeds the configured exponent bound."""


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimensions."""

"""Exception hierarchy.

Every error carries a stable ``name`` used by the command line front end, so
the name survives even where the Python class is an alias.
"""


class DyadicError(Exception):
    name = "DyadicError"


class ParseError(DyadicError):
    name = "ParseError"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class TgdSyntaxError(ParseError):
    name = "SyntaxError"


class NullInInput(ParseError):
    name = "NullInInput"


class ArityMismatch(DyadicError):
    name = "ArityMismatch"

    def __init__(self, predicate, seen, expected, line=None, col=None):
        self.predicate = predicate
        self.seen = seen
        self.expected = expected
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(
            f"predicate {predicate!r} used with arity {seen}, expected {expected}{where}"
        )


class UnsupportedClass(DyadicError):
    name = "UnsupportedClass"


class NotASubset(DyadicError):
    name = "NotASubset"


class NotInDyadicClass(DyadicError):
    name = "NotInDyadicClass"


class ReasonerInexact(DyadicError):
    name = "ReasonerInexact"


class UnboundedChase(DyadicError):
    """Raised when an unlimited chase is requested without a termination certificate."""

    name = "UnboundedChase"

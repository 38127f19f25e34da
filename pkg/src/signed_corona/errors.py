"""Exception hierarchy shared by the library and the CLI."""


class CoronaError(Exception):
    """Base class; the CLI maps every subclass to exit status 1."""


class DomainError(CoronaError, ValueError):
    """Input outside the domain of an operation (bad node id, length mismatch, ...)."""


class UnsupportedHypothesis(CoronaError):
    """A closed form was requested for inputs that violate its hypotheses."""


class NumericalError(CoronaError, ArithmeticError):
    """An iterative numerical routine failed to converge or to bracket a root."""


class ResourceError(CoronaError):
    """An explicit construction would exceed the configured node budget."""


class ParseError(CoronaError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)

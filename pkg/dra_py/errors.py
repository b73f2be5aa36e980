"""Exception hierarchy shared by the library and the CLI."""


class DraError(Exception):
    """Base error. ``exit_code`` is what the CLI exits with."""

    exit_code = 1


class ConfigError(DraError):
    exit_code = 2


class ParseError(DraError):
    """Malformed dataset or report file."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0):
        self.line = line
        if line:
            message = f"line {line}: {message}"
        super().__init__(message)


class InconsistentDimension(ParseError):
    pass


class InvalidInput(DraError):
    """Arguments violating an operation's preconditions."""

    exit_code = 2


class DimensionMismatch(InvalidInput):
    pass


class TooFewSamples(InvalidInput):
    pass


class SingleClass(InvalidInput):
    pass


class NotEnoughSamples(InvalidInput):
    pass


class ClassMismatch(InvalidInput):
    pass


class BadDimension(InvalidInput):
    pass


class NumericalError(DraError):
    exit_code = 3


class NotPositiveDefinite(NumericalError):
    pass


class NonFinite(NumericalError):
    pass


class IoError(DraError):
    exit_code = 4


class DegenerateDataWarning(UserWarning):
    """All samples coincide; the returned basis carries no information."""

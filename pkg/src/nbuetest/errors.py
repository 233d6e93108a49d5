"""Exception hierarchy shared by every module."""


class NbueError(Exception):
    """Base class for all errors raised by nbuetest."""


class SampleError(NbueError, ValueError):
    """Invalid lifetime data."""


class EmptyOrSingleton(SampleError):
    pass


class NegativeValue(SampleError):
    pass


class NonFiniteValue(SampleError):
    pass


class AllZero(SampleError):
    pass


class SampleParseError(SampleError):
    """Unparseable token in a text sample; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadParameter(NbueError, ValueError):
    pass


class UnknownScale(BadParameter):
    pass


class NonpositiveUserConstant(BadParameter):
    pass


class PrecisionExhausted(NbueError, ArithmeticError):
    """The precision ladder topped out before two levels agreed."""


class MissingExternalTable(NbueError, LookupError):
    pass


class TableFormatError(NbueError, ValueError):
    """Malformed external critical-value CSV."""

class EzError(Exception):
    """Base class for errors raised by ezkit."""


class BoundError(EzError):
    """A computation needs objects above the configured degree bound."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class UnsupportedBaseError(EzError):
    """The operation is not defined for this category instance."""


class ParseError(EzError):
    """Malformed complex or map text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid presentation parameters or an out-of-range index."""


class ParseError(ValueError):
    """Malformed word, ring-element, or certificate text.

    Carries a 1-based ``column`` into the offending text when known.
    """

    def __init__(self, message: str, column: int | None = None):
        self.raw_message = message
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class VerificationError(RuntimeError):
    """An internally constructed object failed its own consistency check.

    This always indicates a bug in the builder, never bad user input.
    """

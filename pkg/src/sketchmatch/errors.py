"""Exception hierarchy shared by the sketchmatch library and CLI."""

from typing import Optional


class SketchMatchError(Exception):
    """Base class for all sketchmatch errors."""


class EncodingError(SketchMatchError):
    """A symbol is not part of the configured alphabet."""


class IncompatibleError(SketchMatchError):
    """Two values built for different parameters, primes or lengths were combined."""


class LengthError(SketchMatchError):
    """A prefix is longer than the string it is supposed to prefix."""


class PositionNotStoredError(SketchMatchError, LookupError):
    """A text position is not currently stored by a streaming matcher."""


class ParameterError(SketchMatchError, ValueError):
    """A numeric parameter violates its precondition."""


class ConfigurationError(SketchMatchError):
    """The requested configuration cannot be honoured."""


class InputFormatError(SketchMatchError):
    """Malformed input text, optionally tied to a line number."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)

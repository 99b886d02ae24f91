"""Streaming pattern matching with mismatches and weighted strings."""

from .errors import (
    ConfigurationError,
    EncodingError,
    IncompatibleError,
    InputFormatError,
    LengthError,
    ParameterError,
    PositionNotStoredError,
    SketchMatchError,
)

__all__ = [
    "SketchMatchError",
    "EncodingError",
    "IncompatibleError",
    "LengthError",
    "PositionNotStoredError",
    "ParameterError",
    "ConfigurationError",
    "InputFormatError",
]

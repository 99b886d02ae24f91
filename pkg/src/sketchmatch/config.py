"""Environment-driven settings.

Values come from the process environment, optionally seeded from a ``.env``
file in the working directory.
"""

import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigurationError

# Load environment variables
load_dotenv()

DEFAULT_MAX_TEXT_LEN = 1_000_000


@dataclass(frozen=True)
class Settings:
    """Process-wide defaults for the library and the CLI."""

    seed: int = 0
    max_text_len: int = DEFAULT_MAX_TEXT_LEN
    log_level: str = "WARNING"
    checks: bool = False
    prime_lo: Optional[int] = None
    prime_hi: Optional[int] = None


def _int_from_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


def load_settings() -> Settings:
    """Build :class:`Settings` from the environment.

    Returns:
        Settings with every unset variable at its default.

    Raises:
        ConfigurationError: If a variable holds a malformed value.
    """
    max_text_len = _int_from_env("SKETCHMATCH_MAX_TEXT_LEN", DEFAULT_MAX_TEXT_LEN)
    if max_text_len < 1:
        raise ConfigurationError("SKETCHMATCH_MAX_TEXT_LEN must be at least 1")

    checks = os.getenv("SKETCHMATCH_CHECKS", "0").strip().lower() in ("1", "true", "yes")

    return Settings(
        seed=_int_from_env("SKETCHMATCH_SEED", 0),
        max_text_len=max_text_len,
        log_level=os.getenv("SKETCHMATCH_LOG_LEVEL", "WARNING").upper(),
        checks=checks,
        prime_lo=_int_from_env("SKETCHMATCH_PRIME_LO", None),
        prime_hi=_int_from_env("SKETCHMATCH_PRIME_HI", None),
    )

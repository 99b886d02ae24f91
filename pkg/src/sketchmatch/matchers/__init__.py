"""Streaming matchers for exact, 1-mismatch and k-mismatch occurrences."""

from .stream_match import ExactMatcher, DictMatcher
from .one_mismatch import OneMismatchMatcher, MatchReport
from .k_mismatch import KMismatchMatcher, KMatchReport, Correction

__all__ = [
    "ExactMatcher",
    "DictMatcher",
    "OneMismatchMatcher",
    "MatchReport",
    "KMismatchMatcher",
    "KMatchReport",
    "Correction",
]

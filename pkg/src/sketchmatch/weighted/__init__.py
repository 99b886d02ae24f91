"""Weighted strings and weighted pattern matching."""

from .weighted_string import WeightedString, parse_weighted
from .window_product import WindowProduct
from .weighted_match import WeightedPatternMatcher, WeightedTextMatcher, WeightedBothMatcher, enumerate_matching

__all__ = [
    "WeightedString",
    "parse_weighted",
    "WindowProduct",
    "WeightedPatternMatcher",
    "WeightedTextMatcher",
    "WeightedBothMatcher",
    "enumerate_matching",
]

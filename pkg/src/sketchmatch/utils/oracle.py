"""Brute-force references that hold the whole input in memory."""

import itertools
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ParameterError
from ..weighted.weighted_match import enumerate_matching
from ..weighted.weighted_string import WeightedString

Mismatch = Tuple[int, str, str]


def naive_hamming_scan(pattern: Sequence[str], text: Sequence[str], k: int) -> List[Tuple[int, int, List[Mismatch]]]:
    """(end, distance, mismatches) for every window within distance k."""
    m = len(pattern)
    found = []
    for end in range(m, len(text) + 1):
        window = text[end - m : end]
        mismatches = [(j + 1, pattern[j], window[j]) for j in range(m) if pattern[j] != window[j]]
        if len(mismatches) <= k:
            found.append((end, len(mismatches), mismatches))
    return found


def numpy_hamming_distances(pattern: Sequence[str], text: Sequence[str]) -> np.ndarray:
    """Distance of every full window, index 0 being the window ending at m."""
    m, n = len(pattern), len(text)
    if n < m:
        return np.zeros(0, dtype=int)
    p = np.array([ord(c) for c in pattern])
    t = np.array([ord(c) for c in text])
    windows = np.lib.stride_tricks.sliding_window_view(t, m)
    return np.count_nonzero(windows != p, axis=1)


def naive_window_product(xs: Sequence[float], m: int) -> List[Optional[float]]:
    """Exact product of the last m values at every position; None before m values."""
    found: List[Optional[float]] = []
    for q in range(1, len(xs) + 1):
        if q < m:
            found.append(None)
            continue
        window = xs[q - m : q]
        if any(x == 0 for x in window):
            found.append(0.0)
        else:
            found.append(math.exp(math.fsum(math.log(x) for x in window)))
    return found


def _plain_window_prob(weighted: WeightedString, start: int, plain: Sequence[str]) -> float:
    logs = []
    for offset, letter in enumerate(plain):
        p = weighted.prob(start + offset, letter)
        if p == 0.0:
            return 0.0
        logs.append(math.log(p))
    return math.exp(math.fsum(logs))


def naive_common_product(pattern: WeightedString, text: WeightedString, start: int) -> float:
    """max over strings U of Pr[P = U] * Pr[T[start, start+m) = U], position by position."""
    logs = []
    for i in range(len(pattern)):
        best = max((pattern.prob(i, a) * text.prob(start + i, a) for a in pattern.letters), default=0.0)
        if best == 0.0:
            return 0.0
        logs.append(math.log(best))
    return math.exp(math.fsum(logs))


def exhaustive_common_product(pattern: WeightedString, text: WeightedString, start: int) -> float:
    """Same as :func:`naive_common_product` by trying every string."""
    if len(pattern) > 12:
        raise ParameterError("exhaustive enumeration is limited to patterns of length 12")
    best = 0.0
    for letters in itertools.product(pattern.letters, repeat=len(pattern)):
        value = _plain_window_prob(pattern, 0, letters) * _plain_window_prob(text, start, letters)
        best = max(best, value)
    return best


def naive_wpm(pattern, text, z: float, mode: str) -> List[Optional[float]]:
    """Per alignment end q >= m: the probability the oracle assigns, None when it is zero.

    Modes: ``pw`` (weighted pattern, plain text: Pr[P = window]), ``wt`` (plain
    pattern, weighted text: Pr[window = P]) and ``both`` (the largest
    Pr[T-window = U] over strings U with Pr[P = U] >= 1/z).
    """
    m = len(pattern)
    n = len(text)
    found: List[Optional[float]] = []
    generated = None
    if mode == "both":
        generated = enumerate_matching(pattern, z)
    for end in range(m, n + 1):
        start = end - m
        if mode == "pw":
            value = _plain_window_prob(pattern, 0, text[start:end])
        elif mode == "wt":
            value = _plain_window_prob(text, start, pattern)
        elif mode == "both":
            value = max((_plain_window_prob(text, start, g.text) for g in generated), default=0.0)
        else:
            raise ParameterError(f"unknown mode {mode!r}")
        found.append(value if value > 0 else None)
    return found

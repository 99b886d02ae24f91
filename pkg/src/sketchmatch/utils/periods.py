"""Failure function and minimal periods of strings."""

from typing import List, Sequence


def failure_function(s: Sequence) -> List[int]:
    """fail[i] = length of the longest proper border of s[:i], for i = 0..len(s)."""
    fail = [0] * (len(s) + 1)
    if not s:
        return fail
    k = 0
    for i in range(1, len(s)):
        while k > 0 and s[i] != s[k]:
            k = fail[k]
        if s[i] == s[k]:
            k += 1
        fail[i + 1] = k
    return fail


def minimal_period(s: Sequence) -> int:
    """Smallest rho >= 1 such that s is a prefix of s[:rho] repeated (0 for empty s)."""
    if not s:
        return 0
    return len(s) - failure_function(s)[len(s)]


def prefix_periods(s: Sequence) -> List[int]:
    """periods[i] = minimal period of s[:i], for i = 0..len(s)."""
    fail = failure_function(s)
    return [i - fail[i] for i in range(len(s) + 1)]

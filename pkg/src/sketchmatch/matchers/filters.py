"""2-approximate k-mismatch filters.

A filter answers, for every alignment q >= m, YES when the window is within
distance k of the pattern, NO when it is farther than 2k, and either answer in
between.
"""

import enum
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)

EXACT_WINDOW = "exact-window"
RESIDUE_COUNT = "residue-count"
FILTER_KINDS = (EXACT_WINDOW, RESIDUE_COUNT)


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"


@dataclass(frozen=True)
class FilterVerdict:
    answer: Answer
    distance: Optional[int] = None
    certified: bool = False

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES


class ExactWindowFilter:
    """Keeps the last m symbols and computes the Hamming distance exactly."""

    certifies = True

    def __init__(self, codes: Sequence[int], k: int):
        self.codes = list(codes)
        self.k = k
        self.window = deque(maxlen=len(self.codes))

    def push(self, code: int, evidence: Optional[Sequence[int]] = None) -> Optional[FilterVerdict]:
        self.window.append(code)
        if len(self.window) < len(self.codes):
            return None
        distance = sum(1 for a, b in zip(self.window, self.codes) if a != b)
        answer = Answer.YES if distance <= self.k else Answer.NO
        return FilterVerdict(answer, distance, certified=True)


class ResidueCountFilter:
    """Counts, per prime, the subpatterns without an exact occurrence at the
    alignment. Disjoint subpatterns make each count a lower bound on the
    distance, so windows within distance k are never rejected."""

    certifies = False

    def __init__(self, subpattern_counts: Sequence[int], pattern_len: int, k: int):
        self.subpattern_counts = list(subpattern_counts)
        self.pattern_len = pattern_len
        self.k = k
        self.time = 0

    def push(self, code: int, evidence: Optional[Sequence[int]] = None) -> Optional[FilterVerdict]:
        """``evidence`` holds, per prime, the number of subpatterns occurring exactly."""
        self.time += 1
        if self.time < self.pattern_len:
            return None
        exact = evidence if evidence is not None else [0] * len(self.subpattern_counts)
        worst = max(total - hits for total, hits in zip(self.subpattern_counts, exact))
        answer = Answer.YES if worst <= 2 * self.k else Answer.NO
        return FilterVerdict(answer, None, certified=False)


def filter_new(kind: str, codes: Sequence[int], k: int, subpattern_counts: Sequence[int]):
    """Build the filter named by a configuration token.

    Raises:
        ConfigurationError: If the token names no filter.
    """
    if kind == EXACT_WINDOW:
        return ExactWindowFilter(codes, k)
    if kind == RESIDUE_COUNT:
        return ResidueCountFilter(subpattern_counts, len(codes), k)
    raise ConfigurationError(f"unknown filter {kind!r}; expected one of {', '.join(FILTER_KINDS)}")


def filter_push(f, code: int, evidence: Optional[Sequence[int]] = None) -> Optional[FilterVerdict]:
    return f.push(code, evidence)

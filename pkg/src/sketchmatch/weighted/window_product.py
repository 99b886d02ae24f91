"""(1 - eps)-approximate product over a sliding window of numbers in [0, 1].

The window is covered by consecutive intervals. A new element extends the last
interval while the interval product stays at least 1 - eps; otherwise it opens
a new interval. At most M(z) intervals are kept, which is enough to decide
whether the window product can still reach 1/z.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from ..errors import ParameterError

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12


@dataclass
class _Interval:
    start: int
    log_sum: float
    head_log: float


def interval_capacity(z: float, eps: float) -> int:
    """M(z) = floor(2 * log_{1-eps}((1 - eps) / z))."""
    return math.floor(2 * math.log((1 - eps) / z) / math.log(1 - eps))


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


class WindowProduct:
    """Sliding window product of width ``m`` for the threshold ``1/z``.

    :meth:`push` returns an approximation A of the window product P with
    (1 - eps) * P <= A <= P, or None when P <= (1 - eps) / z.
    """

    def __init__(self, m: int, z: float, eps: float):
        if m < 1:
            raise ParameterError(f"window width must be positive, got {m}")
        if not z > 1:
            raise ParameterError(f"z must exceed 1, got {z}")
        if not 0 < eps < 0.5:
            raise ParameterError(f"epsilon must lie in (0, 1/2), got {eps}")
        self.m = m
        self.z = z
        self.eps = eps
        self.capacity = interval_capacity(z, eps)
        self.floor_log = math.log(1 - eps)
        self.intervals = deque()
        self.time = 0

    def __len__(self) -> int:
        return len(self.intervals)

    def clone(self) -> "WindowProduct":
        twin = object.__new__(WindowProduct)
        twin.__dict__.update(self.__dict__)
        twin.intervals = deque(_Interval(i.start, i.log_sum, i.head_log) for i in self.intervals)
        return twin

    def push(self, x: float) -> Optional[float]:
        if not 0.0 <= x <= 1.0:
            raise ParameterError(f"window values must lie in [0, 1], got {x}")
        q = self.time = self.time + 1
        lx = _log(x)

        last = self.intervals[-1] if self.intervals else None
        if last is not None and last.log_sum + lx >= self.floor_log - TOLERANCE:
            last.log_sum += lx
        else:
            self.intervals.append(_Interval(q, lx, lx))

        if self._overfull():
            self.intervals.popleft()
            assert not self._overfull(), "more than one interval evicted in one step"
        return self.answer()

    def _overfull(self) -> bool:
        if len(self.intervals) > self.capacity:
            return True
        return len(self.intervals) > 1 and self.intervals[1].start <= self.time - self.m + 1

    def answer(self) -> Optional[float]:
        """Current approximation of the window product, or None for No."""
        if not self.intervals or self.time - self.m + 1 < self.intervals[0].start:
            return None
        logs = [interval.log_sum for interval in self.intervals]
        if any(value == -math.inf for value in logs):
            return None
        return math.exp(math.fsum(logs))

    def log_answer(self) -> Optional[float]:
        found = self.answer()
        if found is None:
            return None
        return math.fsum(interval.log_sum for interval in self.intervals)

    def check_invariants(self) -> None:
        """Assert the interval family shape after a push."""
        intervals = list(self.intervals)
        assert len(intervals) <= self.capacity, f"{len(intervals)} intervals exceed capacity {self.capacity}"
        low = self.time - self.m + 1
        for index, interval in enumerate(intervals):
            end = intervals[index + 1].start - 1 if index + 1 < len(intervals) else self.time
            assert interval.start <= end, "intervals must be non-empty and consecutive"
            if index > 0:
                assert interval.start >= low, f"interval at {interval.start} lies outside the window"
            else:
                assert end >= low, "first interval must intersect the window"
            if interval.head_log < self.floor_log - TOLERANCE:
                assert interval.start == end, f"interval at {interval.start} with a small head is not a singleton"
            else:
                assert interval.log_sum >= self.floor_log - TOLERANCE
                if index + 1 < len(intervals):
                    following = intervals[index + 1].head_log
                    assert interval.log_sum + following < self.floor_log + TOLERANCE


def swp_new(m: int, z: float, eps: float) -> WindowProduct:
    return WindowProduct(m, z, eps)


def swp_push(w: WindowProduct, x: float) -> Optional[float]:
    return w.push(x)

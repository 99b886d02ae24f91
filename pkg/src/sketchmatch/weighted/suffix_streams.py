"""Maximal matching suffixes of a weighted text.

A stream follows one plain string that the text spells with probability at
least 1/(2z) from some point on. It is identified by its mismatches against the
heavy string of the text, kept only while the product of the values from the
mismatch to the current position stays at least 1/(2z); the rightmost dropped
mismatch is the stream's cut. Streams with the same key are merged, keeping the
one with the smallest cut.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from ..errors import ParameterError
from .weighted_string import heavy_letter
from .window_product import TOLERANCE, WindowProduct

logger = logging.getLogger(__name__)

Key = Tuple[Tuple[int, str], ...]


@dataclass
class _Entry:
    position: int
    letter: str
    log_product: float


@dataclass
class SuffixStream:
    start: int
    cut: int
    window: WindowProduct
    entries: List[_Entry] = field(default_factory=list)
    matcher: Any = None
    found: Any = None

    def key(self) -> Key:
        return tuple((entry.position, entry.letter) for entry in self.entries)

    def key_from(self, position: int) -> Key:
        return tuple((e.position, e.letter) for e in self.entries if e.position >= position)

    def clone(self) -> "SuffixStream":
        return SuffixStream(
            self.start,
            self.cut,
            self.window.clone(),
            [_Entry(e.position, e.letter, e.log_product) for e in self.entries],
            self.matcher.clone() if self.matcher is not None else None,
        )


class SuffixStreamSet:
    """All streams of the text read so far.

    ``matcher_factory`` builds a fresh per-stream matcher; each stream pushes
    its own letter into it and keeps the result in ``found``.
    """

    def __init__(self, m: int, z: float, eps: float, matcher_factory: Optional[Callable[[], Any]] = None):
        if not z > 1:
            raise ParameterError(f"z must exceed 1, got {z}")
        self.m = m
        self.z = z
        self.eps = eps
        self.cutoff = 1.0 / (2 * z)
        self.cutoff_log = math.log(self.cutoff)
        self.matcher_factory = matcher_factory
        self.streams: List[SuffixStream] = []
        self.time = 0
        self.heavy = ""

    def __len__(self) -> int:
        return len(self.streams)

    def _fresh(self, q: int) -> SuffixStream:
        matcher = self.matcher_factory() if self.matcher_factory is not None else None
        return SuffixStream(q, q - 1, WindowProduct(self.m, self.z, self.eps), matcher=matcher)

    def push(self, symbol: Mapping[str, float]) -> List[SuffixStream]:
        """Advance every stream by one weighted symbol."""
        q = self.time = self.time + 1
        self.heavy = heavy_letter(symbol)
        letters = sorted(
            (letter, prob) for letter, prob in symbol.items() if prob >= self.cutoff * (1 - TOLERANCE)
        )
        parents = self.streams or [self._fresh(q)]

        grouped: Dict[Key, SuffixStream] = {}
        for parent in parents:
            for index, (letter, prob) in enumerate(letters):
                child = parent if index == len(letters) - 1 else parent.clone()
                self._extend(child, q, letter, prob)
                kept = grouped.get(child.key())
                if kept is None or child.cut < kept.cut:
                    grouped[child.key()] = child
        self.streams = list(grouped.values())
        if not self.streams:
            logger.debug("no letter above the cutoff at %d; streams restart", q)
        return self.streams

    def _extend(self, stream: SuffixStream, q: int, letter: str, prob: float) -> None:
        lx = math.log(prob)
        for entry in stream.entries:
            entry.log_product += lx
        dropped = 0
        while dropped < len(stream.entries) and stream.entries[dropped].log_product < self.cutoff_log - TOLERANCE:
            stream.cut = max(stream.cut, stream.entries[dropped].position)
            dropped += 1
        if dropped:
            del stream.entries[:dropped]
        if letter != self.heavy:
            stream.entries.append(_Entry(q, letter, lx))
        stream.window.push(prob)
        if stream.matcher is not None:
            stream.found = stream.matcher.push(letter)

    def best(self, predicate: Callable[[SuffixStream], bool]) -> Optional[float]:
        """Largest window approximation among streams satisfying ``predicate``."""
        best = None
        for stream in self.streams:
            if not predicate(stream):
                continue
            value = stream.window.answer()
            if value is not None and (best is None or value > best):
                best = value
        return best

    def by_window_key(self) -> Dict[Key, float]:
        """Window approximation per key restricted to the current window.

        Only streams whose cut lies before the window take part, so the
        restricted key spells the stream's letters over the whole window.
        """
        low = self.time - self.m + 1
        found: Dict[Key, float] = {}
        for stream in self.streams:
            if stream.cut >= low:
                continue
            value = stream.window.answer()
            if value is None:
                continue
            key = stream.key_from(low)
            if key not in found or value > found[key]:
                found[key] = value
        return found

    def check_invariants(self) -> None:
        assert len(self.streams) <= max(1, math.floor(2 * self.z)), f"{len(self.streams)} live streams"
        limit = math.log2(self.z) + 1
        for stream in self.streams:
            assert len(stream.entries) <= limit + TOLERANCE, f"stream keeps {len(stream.entries)} mismatches"
            for entry in stream.entries:
                assert entry.log_product >= self.cutoff_log - TOLERANCE

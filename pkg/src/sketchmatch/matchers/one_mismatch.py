"""Streaming 1-mismatch pattern matching with error correction.

Every window at Hamming distance one from P is, for exactly one partition
P = P_i S_i, an occurrence of P_i whose only mismatch lies in its right half,
followed by an exact occurrence of S_i. The first process detects those right-half
occurrences of P_i; the second process runs an exact matcher on S_i whose
positions learn, level by level, whether a right-half occurrence precedes them.
Positions inside a periodic run are never stored individually: their status is
derived from a handful of anchors per level and the sketch algebra.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from ..errors import EncodingError, ParameterError
from ..hashing.fingerprint import FingerprintParams, fp_cut_prefix
from ..hashing.mismatch_sketch import (
    MismatchVerdict,
    VerdictKind,
    SketchFamily,
    family_append_code,
    family_build_codes,
    family_concat,
    family_cut_prefix,
    family_cut_suffix,
    family_empty,
    family_power,
    locate_single_mismatch,
)
from ..hashing.primes import PrimeSet, default_prime_set
from ..utils.periods import minimal_period
from .stream_match import ExactMatcher, StoredPosition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatchReport:
    """A window ending at ``end`` within distance one of the pattern.

    For distance one, ``position`` is 1-based in pattern coordinates.
    """

    end: int
    distance: int
    position: Optional[int] = None
    pattern_symbol: Optional[str] = None
    text_symbol: Optional[str] = None


@dataclass(frozen=True)
class RightHalf:
    """A right-half 1-mismatch occurrence of P_i ending at ``end``.

    ``before`` is the sketch family of the text preceding the window.
    """

    end: int
    before: SketchFamily
    window: SketchFamily
    verdict: MismatchVerdict


@dataclass(frozen=True)
class Preceded:
    """Position ``position`` of S_i's matcher preceded by a right-half occurrence."""

    position: int
    before: SketchFamily
    verdict: MismatchVerdict


@dataclass
class _Chain:
    start: int
    last: int
    anchors: Dict[int, Preceded] = field(default_factory=dict)


class Partition:
    """Offline data for P = P_i S_i."""

    def __init__(self, index: int, codes: Sequence[int], primes: PrimeSet, params: FingerprintParams):
        self.index = index
        self.span = 1 << index
        self.head_len = min(self.span, len(codes))
        self.head_codes = list(codes[: self.head_len])
        self.tail_codes = list(codes[self.head_len :])
        self.head_family = family_build_codes(self.head_codes, primes, params)

        half = self.head_codes[: max(1, self.span // 2)]
        self.half_period = minimal_period(half)
        self.half_period_family = family_build_codes(half[: self.half_period], primes, params)
        self._half_powers: Dict[int, SketchFamily] = {}
        # anchor window width
        self.width = 1 << (index - 2) if index >= 2 else 1

    def half_power(self, count: int) -> SketchFamily:
        """Sketch family of ``count`` copies of the half period, memoized."""
        found = self._half_powers.get(count)
        if found is None:
            found = self._half_powers[count] = family_power(self.half_period_family, count)
        return found

    def is_right_half(self, verdict: MismatchVerdict) -> bool:
        return verdict.is_single and verdict.position > self.span // 2


class AnchoredMatcher(ExactMatcher):
    """Exact matcher on S_i that tracks which positions are preceded by a
    right-half 1-mismatch occurrence of P_i."""

    def __init__(self, partition: Partition, primes: PrimeSet, params: FingerprintParams):
        super().__init__([], params, primes=primes, codes=partition.tail_codes)
        self.partition = partition
        self.chains: List[List[_Chain]] = [[] for _ in range(self.top)]
        self.arriving: Optional[Preceded] = None
        self.found: List[Preceded] = []
        self.on_transport: Optional[Callable[[int, int, SketchFamily, SketchFamily], None]] = None
        self._promoted: Optional[Preceded] = None

        self.window_families: List[SketchFamily] = []
        self.window_verdicts: List[MismatchVerdict] = []
        span = partition.span
        for level in range(self.top):
            rho = self.periods[level]
            delta = (-span) % rho
            block = family_build_codes(self.codes[:rho], primes, params)
            cut = family_build_codes(self.codes[:delta], primes, params)
            window = family_cut_prefix(family_power(block, (span + delta) // rho), cut)
            self.window_families.append(window)
            self.window_verdicts.append(locate_single_mismatch(partition.head_family, window))

    def clone(self) -> "AnchoredMatcher":
        twin = super().clone()
        twin.chains = [
            [_Chain(c.start, c.last, dict(c.anchors)) for c in chains] for chains in self.chains
        ]
        twin.found = []
        return twin

    def push_code(self, code: int, prefix_family: Optional[SketchFamily] = None) -> List[int]:
        q = self.time + 1
        for level, chains in enumerate(self.chains):
            # a chain is dead once its last position has been decided at this level
            horizon = q - self.lengths[level + 1] + 1
            while chains and chains[0].last < horizon:
                chains.pop(0)
        return super().push_code(code, prefix_family)

    def _on_enter(self, level: int, stored: StoredPosition) -> None:
        if level == 0:
            info = self.arriving if self.arriving and self.arriving.position == stored.position else None
        else:
            info, self._promoted = self._promoted, None
        if level == self.top:
            if info is not None:
                self.found.append(info)
            return
        self._register(level, stored.position, info)

    def _promoting(self, level: int, stored: StoredPosition) -> None:
        self._promoted = self.verify_position(level, stored)

    def _register(self, level: int, position: int, info: Optional[Preceded]) -> None:
        chains = self.chains[level]
        if chains and position - chains[-1].last == self.periods[level]:
            chain = chains[-1]
            chain.last = position
        else:
            chain = _Chain(position, position)
            chains.append(chain)
        if info is None:
            return
        first = chain.anchors.get(0)
        if first is None:
            chain.anchors[0] = info
        elif position < first.position + self.partition.span:
            chain.anchors.setdefault((position - first.position) // self.partition.width, info)

    def verify_position(self, level: int, stored: StoredPosition) -> Optional[Preceded]:
        """Decide whether the head ``stored`` of ``level`` is preceded.

        Returns the sketch family of the text before the preceding occurrence,
        or None when the position is not preceded.
        """
        position = stored.position
        chains = self.chains[level]
        while chains and chains[0].last < position:
            chains.pop(0)
        if not chains or chains[0].start > position:
            return None
        chain = chains[0]
        part = self.partition

        first = chain.anchors.get(0)
        if first is None or position < first.position:
            return None

        if position >= first.position + part.span:
            verdict = self.window_verdicts[level]
            if not part.is_right_half(verdict):
                return None
            before = family_cut_suffix(stored.prefix_family, self.window_families[level])
            found = Preceded(position, before, verdict)
        else:
            anchor = chain.anchors.get((position - first.position) // part.width)
            if anchor is None or position < anchor.position:
                return None
            shift = position - anchor.position
            if shift == 0:
                found = anchor
            else:
                if shift % part.half_period:
                    return None
                before = family_concat(anchor.before, part.half_power(shift // part.half_period))
                window = family_cut_prefix(stored.prefix_family, before)
                verdict = locate_single_mismatch(part.head_family, window)
                if not part.is_right_half(verdict):
                    return None
                found = Preceded(position, before, verdict)

        if self.on_transport is not None:
            self.on_transport(level, position, found.before, stored.prefix_family)
        return found


class OneMismatchMatcher:
    """Reports every window within Hamming distance one of the pattern.

    Distance-one reports carry the pattern and text letters at the mismatch,
    recovered from the sketches. Exact occurrences come from a sketch-tracking
    exact matcher on P whose levels also provide the prefix sketches the first
    process needs.
    """

    def __init__(self, pattern: Sequence[str], params: FingerprintParams, codes: Optional[Sequence[int]] = None):
        if codes is None:
            codes = [params.encode(symbol) for symbol in pattern]
        codes = list(codes)
        if not codes:
            raise ParameterError("pattern must not be empty")

        self.params = params
        self.codes = codes
        self.primes = default_prime_set(len(codes))
        self.exact = ExactMatcher([], params, primes=self.primes, codes=codes)
        self.partitions = [
            Partition(i, codes, self.primes, params) for i in range((len(codes) - 1).bit_length() + 1)
        ]
        self.tails = [
            AnchoredMatcher(part, self.primes, params) if part.tail_codes else None for part in self.partitions
        ]
        self.running = family_empty(self.primes, params)
        self.time = 0
        self.events: Counter = Counter()
        self._right_halves: List[Optional[RightHalf]] = [None] * len(self.partitions)
        logger.debug("1-mismatch matcher: m=%d, %d partitions, primes=%s", len(codes), len(self.partitions), self.primes.primes)

    def __len__(self) -> int:
        return len(self.codes)

    def clone(self) -> "OneMismatchMatcher":
        twin = object.__new__(OneMismatchMatcher)
        twin.__dict__.update(self.__dict__)
        twin.exact = self.exact.clone()
        twin.tails = [tail.clone() if tail is not None else None for tail in self.tails]
        twin.events = Counter(self.events)
        twin._right_halves = list(self._right_halves)
        return twin

    def push(self, symbol: str) -> List[MatchReport]:
        return self.push_code(self.params.encode(symbol))

    def push_code(self, code: int) -> List[MatchReport]:
        q = self.time + 1
        self.time = q
        before = self.running
        self.running = family_append_code(before, code)
        heads = [self.exact.head(level) for level in range(self.exact.top)]

        by_end: Dict[int, MatchReport] = {}
        for end in self.exact.push_code(code, before):
            by_end[end] = MatchReport(end, 0)

        for i, tail in enumerate(self.tails):
            if tail is None:
                continue
            previous = self._right_halves[i]
            tail.arriving = (
                Preceded(q, previous.before, previous.verdict) if previous is not None and previous.end == q - 1 else None
            )
            tail.found = []
            tail.push_code(code, before)
            for found in tail.found:
                self._report(by_end, found.position + len(tail.codes) - 1, found.verdict)

        for i, part in enumerate(self.partitions):
            found = self.right_half_check(i, code, before, heads)
            self._right_halves[i] = found
            if found is not None and self.tails[i] is None:
                self._report(by_end, q, found.verdict)

        return [by_end[end] for end in sorted(by_end)]

    def right_half_check(
        self, i: int, code: int, before: SketchFamily, heads: Sequence[Optional[StoredPosition]]
    ) -> Optional[RightHalf]:
        """Detect a right-half 1-mismatch occurrence of P_i ending at the current time.

        ``before`` is the sketch family of the text preceding the new symbol and
        ``heads`` the level heads of the exact matcher taken before the push.
        """
        part = self.partitions[i]
        q = self.time
        if i == 0:
            if code == self.codes[0]:
                return None
            window = family_build_codes([code], self.primes, self.params)
            verdict = MismatchVerdict(VerdictKind.SINGLE, 1, (self.codes[0] - code) % self.params.p)
            return RightHalf(q, before, window, verdict)

        head = heads[i - 1]
        if head is None or head.position != q - part.head_len + 1:
            return None
        # an exact occurrence of P_i has no right-half mismatch
        if fp_cut_prefix(self.exact.text_fp, head.prefix_fp).value == self.exact.prefix_fps[i].value:
            return None
        window = family_cut_prefix(self.running, head.prefix_family)
        verdict = locate_single_mismatch(part.head_family, window)
        if not part.is_right_half(verdict):
            return None
        return RightHalf(q, head.prefix_family, window, verdict)

    def _report(self, by_end: Dict[int, MatchReport], end: int, verdict: MismatchVerdict) -> None:
        if end in by_end:
            return
        j = verdict.position
        alphabet = self.params.alphabet
        pattern_code = self.codes[j - 1]
        try:
            text_symbol = alphabet.decode((pattern_code - verdict.difference) % self.params.p)
        except EncodingError:
            self.events["undecodable"] += 1
            logger.warning("dropping report at %d: recovered letter is outside the alphabet", end)
            return
        by_end[end] = MatchReport(end, 1, j, alphabet.decode(pattern_code), text_symbol)


def om_new(pattern: Sequence[str], params: FingerprintParams) -> OneMismatchMatcher:
    return OneMismatchMatcher(pattern, params)


def om_push(matcher: OneMismatchMatcher, symbol: str) -> List[MatchReport]:
    return matcher.push(symbol)

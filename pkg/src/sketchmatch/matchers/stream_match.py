"""Level-based streaming exact pattern matching.

Level j holds the text positions l at which Q[1, 2^j] occurs and whose
occurrence of Q[1, 2^(j+1)] cannot be decided yet. At time l + 2^(j+1) - 1 the
leftmost position of level j is promoted or discarded by a fingerprint
comparison; positions reaching the top level are occurrences of Q.

Positions of a level are kept as runs. Three or more coexisting positions always
form one arithmetic progression whose difference is the minimal period of
Q[1, 2^j], so a run stores only its head, its length and the prefix fingerprint
of the head. Interior prefixes are rebuilt as head + (period block)^k. Sketch
families are rebuilt the same way, but only when a caller asks for one.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

from ..errors import ParameterError, PositionNotStoredError
from ..hashing.fingerprint import (
    Fingerprint,
    FingerprintParams,
    fp_append_code,
    fp_concat,
    fp_cut_prefix,
    fp_empty,
    fp_of_codes,
    fp_power,
)
from ..hashing.mismatch_sketch import (
    SketchFamily,
    family_build_codes,
    family_concat,
    family_power,
)
from ..hashing.primes import PrimeSet
from ..utils.periods import prefix_periods

logger = logging.getLogger(__name__)


@dataclass
class _Run:
    head: int
    count: int
    diff: int
    head_fp: Fingerprint
    origin: "FamilySource"
    # period blocks between the origin and the current head
    steps: int = 0
    cached_head: Optional["StoredPosition"] = None
    popped: Optional["StoredPosition"] = None

    @property
    def last(self) -> int:
        return self.head + (self.count - 1) * self.diff


@dataclass(frozen=True)
class StoredPosition:
    """A stored text position l with phi(T[1, l-1]).

    The sketch family of T[1, l-1] is ``origin`` followed by ``steps`` copies of
    ``step_family`` and is computed on first access.
    """

    position: int
    prefix_fp: Fingerprint
    origin: "FamilySource"
    steps: int = 0
    step_family: Optional[SketchFamily] = None

    @cached_property
    def prefix_family(self) -> Optional[SketchFamily]:
        base = self.origin.prefix_family if isinstance(self.origin, StoredPosition) else self.origin
        if base is None or self.steps == 0:
            return base
        return family_concat(base, family_power(self.step_family, self.steps))

    @property
    def family_known(self) -> bool:
        return "prefix_family" in self.__dict__


FamilySource = Union[SketchFamily, StoredPosition, None]


class ExactMatcher:
    """Streaming exact matcher for one pattern.

    When ``primes`` is given the matcher also carries, for every stored position
    l, the sketch family of T[1, l-1]; callers then pass the family of the text
    read so far to :meth:`push_code`.
    """

    def __init__(
        self,
        pattern: Sequence[str],
        params: FingerprintParams,
        primes: Optional[PrimeSet] = None,
        codes: Optional[Sequence[int]] = None,
    ):
        if codes is None:
            codes = [params.encode(symbol) for symbol in pattern]
        codes = list(codes)
        if not codes:
            raise ParameterError("pattern must not be empty")

        self.params = params
        self.primes = primes
        self.codes = codes
        self.top = (len(codes) - 1).bit_length()
        self.lengths = [min(1 << j, len(codes)) for j in range(self.top + 1)]

        all_periods = prefix_periods(codes)
        self.periods = [all_periods[length] for length in self.lengths]
        self.prefix_fps = [fp_of_codes(codes[:length], params) for length in self.lengths]
        self.period_fps = [fp_of_codes(codes[:rho], params) for rho in self.periods]
        self.period_families = (
            [family_build_codes(codes[:rho], primes, params) for rho in self.periods] if primes is not None else None
        )

        self.levels: List[List[_Run]] = [[] for _ in range(self.top)]
        self.time = 0
        self.text_fp = fp_empty(params)

    @property
    def level_count(self) -> int:
        return self.top + 1

    def __len__(self) -> int:
        return len(self.codes)

    def clone(self) -> "ExactMatcher":
        twin = object.__new__(type(self))
        twin.__dict__.update(self.__dict__)
        twin.levels = [
            [_Run(r.head, r.count, r.diff, r.head_fp, r.origin, r.steps, r.cached_head, r.popped) for r in runs] for runs in self.levels
        ]
        return twin

    def push(self, symbol: str, prefix_family: Optional[SketchFamily] = None) -> List[int]:
        """Feed one text symbol; returns the end positions of occurrences ending here."""
        return self.push_code(self.params.encode(symbol), prefix_family)

    def push_code(self, code: int, prefix_family: Optional[SketchFamily] = None) -> List[int]:
        q = self.time + 1
        self.time = q
        before = self.text_fp
        self.text_fp = fp_append_code(before, code)
        emitted: List[int] = []

        if code == self.codes[0]:
            self._enter(0, StoredPosition(q, before, prefix_family), emitted)

        for j in range(self.top):
            runs = self.levels[j]
            if not runs or runs[0].head + self.lengths[j + 1] - 1 != q:
                continue
            stored = self._pop_head(j)
            window = fp_cut_prefix(self.text_fp, stored.prefix_fp)
            if window.value == self.prefix_fps[j + 1].value:
                self._promoting(j, stored)
                self._enter(j + 1, stored, emitted)
        return emitted

    def _enter(self, level: int, stored: StoredPosition, emitted: List[int]) -> None:
        self._on_enter(level, stored)
        if level == self.top:
            emitted.append(stored.position + len(self.codes) - 1)
            return
        runs = self.levels[level]
        rho = self.periods[level]
        if runs and stored.position - runs[-1].last == rho:
            runs[-1].count += 1
            return
        runs.append(_Run(stored.position, 1, rho, stored.prefix_fp, stored))

    def _pop_head(self, level: int) -> StoredPosition:
        runs = self.levels[level]
        run = runs[0]
        stored = self._stored(level, run)
        if run.count == 1:
            runs.pop(0)
        else:
            run.head += run.diff
            run.count -= 1
            run.head_fp = fp_concat(run.head_fp, self.period_fps[level])
            run.steps += 1
            run.cached_head = None
            run.popped = stored
        return stored

    def _stored(self, level: int, run: _Run, k: int = 0) -> StoredPosition:
        if k == 0 and run.cached_head is not None:
            return run.cached_head
        if run.popped is not None and run.popped.family_known:
            # rebase on the previous head, one period block back
            run.origin, run.steps = run.popped.prefix_family, 1
            run.popped = None
        position = run.head + k * run.diff
        prefix_fp = run.head_fp if k == 0 else fp_concat(run.head_fp, fp_power(self.period_fps[level], k))
        step_family = self.period_families[level] if self.period_families is not None else None
        stored = StoredPosition(position, prefix_fp, run.origin, run.steps + k, step_family)
        if k == 0:
            run.cached_head = stored
        return stored

    def _promoting(self, level: int, stored: StoredPosition) -> None:
        """Hook: ``stored`` passed the check at ``level`` and moves up."""

    def _on_enter(self, level: int, stored: StoredPosition) -> None:
        """Hook: ``stored`` enters ``level`` (the top level means an occurrence)."""

    def head(self, level: int) -> Optional[StoredPosition]:
        """Leftmost position of a level with its stored prefix data."""
        runs = self.levels[level] if level < self.top else []
        if not runs:
            return None
        return self._stored(level, runs[0])

    def _locate(self, position: int) -> Tuple[int, _Run, int]:
        for level, runs in enumerate(self.levels):
            for run in runs:
                if run.head <= position <= run.last and (position - run.head) % run.diff == 0:
                    return level, run, (position - run.head) // run.diff
        raise PositionNotStoredError(f"position {position} is not stored at any level")

    def prefix_fingerprint_at(self, position: int) -> Fingerprint:
        """phi(T[1, position-1]) for a currently stored position.

        Raises:
            PositionNotStoredError: If the position is not stored.
        """
        level, run, k = self._locate(position)
        return self._stored(level, run, k).prefix_fp

    def prefix_family_at(self, position: int) -> SketchFamily:
        """Sketch family of T[1, position-1] for a currently stored position.

        Raises:
            PositionNotStoredError: If the position is not stored.
            ParameterError: If the matcher does not track sketches.
        """
        if self.primes is None:
            raise ParameterError("this matcher does not track sketch families")
        level, run, k = self._locate(position)
        return self._stored(level, run, k).prefix_family

    def stored_positions(self, level: int) -> List[int]:
        return [run.head + t * run.diff for run in self.levels[level] for t in range(run.count)]

    def check_shape(self) -> None:
        """Assert the per-level space shape."""
        for level, runs in enumerate(self.levels):
            assert len(runs) <= 2, f"level {level} holds {len(runs)} runs"
            positions = self.stored_positions(level)
            if len(positions) >= 3:
                assert len(runs) == 1, f"level {level}: {len(positions)} positions outside one progression"
                assert runs[0].diff == self.periods[level]


def matcher_new(pattern: Sequence[str], params: FingerprintParams) -> ExactMatcher:
    return ExactMatcher(pattern, params)


def matcher_push(matcher: ExactMatcher, symbol: str) -> List[int]:
    return matcher.push(symbol)


class DictMatcher:
    """Dictionary matching by one :class:`ExactMatcher` per pattern."""

    def __init__(self, patterns: Sequence[Sequence[str]], params: FingerprintParams):
        if not patterns:
            raise ParameterError("dictionary must not be empty")
        self.params = params
        self.matchers = [ExactMatcher(pattern, params) for pattern in patterns]

    def __len__(self) -> int:
        return len(self.matchers)

    def clone(self) -> "DictMatcher":
        twin = object.__new__(DictMatcher)
        twin.params = self.params
        twin.matchers = [matcher.clone() for matcher in self.matchers]
        return twin

    def push(self, symbol: str) -> List[Tuple[int, int]]:
        return self.push_code(self.params.encode(symbol))

    def push_code(self, code: int) -> List[Tuple[int, int]]:
        """(pattern id, end position) for every pattern ending at the new symbol."""
        found = []
        for pattern_id, matcher in enumerate(self.matchers):
            for end in matcher.push_code(code):
                found.append((pattern_id, end))
        return found


def dict_new(patterns: Sequence[Sequence[str]], params: FingerprintParams) -> DictMatcher:
    return DictMatcher(patterns, params)


def dict_push(matcher: DictMatcher, symbol: str) -> List[Tuple[int, int]]:
    return matcher.push(symbol)

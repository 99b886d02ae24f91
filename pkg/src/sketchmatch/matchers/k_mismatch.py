"""k-mismatch matching with error correction by random prime partitions.

For each sampled prime p the pattern splits into subpatterns P[j], P[j+p], ...
and the text into the substreams of positions congruent modulo p. Every
(subpattern, substream) pair runs a 1-mismatch matcher; a mismatch that is
alone in its subpattern for some prime is recovered with its letters. Whether
an alignment is reported is decided by a pluggable 2-approximate filter.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ParameterError
from ..hashing.fingerprint import FingerprintParams
from ..hashing.primes import default_prime_interval, sample_primes
from .filters import EXACT_WINDOW, filter_new
from .one_mismatch import OneMismatchMatcher

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Correction:
    """Mismatch at 1-based pattern position ``position``."""

    position: int
    pattern_symbol: str
    text_symbol: str

    def __str__(self) -> str:
        return f"{self.position}:{self.pattern_symbol}>{self.text_symbol}"


@dataclass(frozen=True)
class KMatchReport:
    end: int
    distance: int
    corrections: Tuple[Correction, ...]
    certified: bool = True


class PrimePartition:
    """Subpatterns of P for one prime and their matchers, one per substream."""

    def __init__(self, prime: int, codes: Sequence[int], params: FingerprintParams):
        self.prime = prime
        self.params = params
        self.subpatterns = [list(codes[j::prime]) for j in range(min(prime, len(codes)))]
        self.matchers: Dict[Tuple[int, int], OneMismatchMatcher] = {}

    def __len__(self) -> int:
        return len(self.subpatterns)

    def matcher(self, subpattern: int, substream: int) -> OneMismatchMatcher:
        key = (subpattern, substream)
        found = self.matchers.get(key)
        if found is None:
            found = OneMismatchMatcher([], self.params, codes=self.subpatterns[subpattern])
            self.matchers[key] = found
        return found


class IsolatedMismatchSet:
    """Mismatches of one alignment, each witnessed by a (prime, subpattern) pair."""

    def __init__(self, end: int):
        self.end = end
        self.mismatches: Dict[int, Correction] = {}
        self.witnesses: Dict[int, Tuple[int, int]] = {}
        self.conflict = False

    def add(self, correction: Correction, witness: Tuple[int, int]) -> None:
        known = self.mismatches.get(correction.position)
        if known is None:
            self.mismatches[correction.position] = correction
            self.witnesses[correction.position] = witness
        elif known != correction:
            self.conflict = True

    def __len__(self) -> int:
        return len(self.mismatches)

    def corrections(self) -> Tuple[Correction, ...]:
        return tuple(sorted(self.mismatches.values()))


class KMismatchMatcher:
    """Reports windows within Hamming distance k of the pattern with all corrections.

    Args:
        pattern: The pattern letters.
        k: Mismatch budget, 1 <= k < len(pattern).
        params: Fingerprint parameters.
        seed: Seed for the prime sample.
        filter_kind: ``exact-window`` or ``residue-count``.
        prime_interval: Override of the interval primes are drawn from.
    """

    def __init__(
        self,
        pattern: Sequence[str],
        k: int,
        params: FingerprintParams,
        seed: int = 0,
        filter_kind: str = EXACT_WINDOW,
        prime_interval: Optional[Tuple[int, int]] = None,
        codes: Optional[Sequence[int]] = None,
    ):
        if codes is None:
            codes = [params.encode(symbol) for symbol in pattern]
        codes = list(codes)
        m = len(codes)
        if not 1 <= k < m:
            raise ParameterError(f"k must satisfy 1 <= k < {m}, got {k}")

        self.params = params
        self.codes = codes
        self.k = k
        if prime_interval is None:
            lo, hi = default_prime_interval(m, k)
        else:
            lo, hi = prime_interval
            logger.warning("drawing primes from the override interval [%d, %d]", lo, hi)
        self.prime_interval = (lo, hi)
        self.primes = sample_primes(max(1, m.bit_length() - 1), lo, hi, seed)
        self.partitions = [PrimePartition(p, codes, params) for p in self.primes]
        self.filter = filter_new(filter_kind, codes, k, [len(part) for part in self.partitions])
        self.time = 0
        self.events: Counter = Counter()
        # alignment end -> per prime: subpattern -> (distance, correction)
        self._pending: Dict[int, Dict[int, Dict[int, Tuple[int, Optional[Correction]]]]] = defaultdict(
            lambda: defaultdict(dict)
        )
        logger.info("k-mismatch matcher: m=%d k=%d primes=%s filter=%s", m, k, self.primes, filter_kind)

    def push(self, symbol: str) -> List[KMatchReport]:
        return self.push_code(self.params.encode(symbol))

    def push_code(self, code: int) -> List[KMatchReport]:
        t = self.time
        self.time = q = t + 1
        m = len(self.codes)

        for index, part in enumerate(self.partitions):
            p = part.prime
            for j, sub in enumerate(part.subpatterns):
                for report in part.matcher(j, t % p).push_code(code):
                    start = t - j - (len(sub) - 1) * p
                    if start < 0:
                        continue
                    correction = None
                    if report.distance == 1:
                        correction = Correction(
                            j + (report.position - 1) * p + 1, report.pattern_symbol, report.text_symbol
                        )
                    self._pending[start + m][index][j] = (report.distance, correction)

        found = self._pending.pop(q, {})
        exact_counts = [sum(1 for d, _ in found.get(i, {}).values() if d == 0) for i in range(len(self.partitions))]
        verdict = self.filter.push(code, exact_counts)
        if verdict is None or not verdict.is_yes:
            return []

        isolated = self.isolated_mismatches(q, found)
        if isolated.conflict:
            self.events["conflict"] += 1
            logger.warning("dropping alignment %d: primes disagree on a recovered letter", q)
            return []
        if len(isolated) > self.k:
            return []
        if verdict.certified:
            if len(isolated) != verdict.distance:
                self.events["incomplete"] += 1
                logger.info("alignment %d: %d of %d mismatches isolated", q, len(isolated), verdict.distance)
                return []
            return [KMatchReport(q, verdict.distance, isolated.corrections(), True)]
        return [KMatchReport(q, len(isolated), isolated.corrections(), False)]

    def isolated_mismatches(self, q: int, found) -> IsolatedMismatchSet:
        isolated = IsolatedMismatchSet(q)
        for index in sorted(found):
            for j in sorted(found[index]):
                distance, correction = found[index][j]
                if correction is not None:
                    isolated.add(correction, (self.primes[index], j))
        return isolated


def km_new(
    pattern: Sequence[str], k: int, params: FingerprintParams, seed: int = 0, filter_kind: str = EXACT_WINDOW
) -> KMismatchMatcher:
    return KMismatchMatcher(pattern, k, params, seed=seed, filter_kind=filter_kind)


def km_push(matcher: KMismatchMatcher, symbol: str) -> List[KMatchReport]:
    return matcher.push(symbol)

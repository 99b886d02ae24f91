"""Weighted pattern matching in a stream.

Three variants: a weighted pattern against a plain text, a plain pattern
against a weighted text, and both weighted. Each finds candidates either with
exact (dictionary) matchers or with a k-mismatch matcher run on heavy strings.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from ..errors import ConfigurationError, ParameterError
from ..hashing.alphabet import Alphabet
from ..hashing.fingerprint import FingerprintParams, params_new
from ..matchers.filters import EXACT_WINDOW
from ..matchers.k_mismatch import KMismatchMatcher
from ..matchers.stream_match import DictMatcher, ExactMatcher
from .suffix_streams import SuffixStreamSet
from .weighted_string import WeightedString, check_symbol

logger = logging.getLogger(__name__)

REL_TOLERANCE = 1e-9

DICTIONARY = "dictionary"
KMISMATCH = "kmismatch"
EXACTPM = "exactpm"


def _reaches(prob: float, threshold: float) -> bool:
    return prob >= threshold * (1 - REL_TOLERANCE)


@dataclass(frozen=True)
class Generated:
    text: str
    probability: float


def enumerate_matching(pattern: WeightedString, z: float) -> List[Generated]:
    """All plain strings the pattern matches with probability at least 1/z.

    Strings are grown one position at a time and pruned as soon as their prefix
    probability drops below the threshold, so at most z partial strings survive.
    """
    if not z > 1:
        raise ParameterError(f"z must exceed 1, got {z}")
    threshold = math.log(1.0 / z)
    partial: List[Tuple[str, float]] = [("", 0.0)]
    for i in range(len(pattern)):
        column = pattern[i]
        grown = []
        for prefix, log_prob in partial:
            for letter in sorted(column):
                extended = log_prob + math.log(column[letter])
                if extended >= threshold - REL_TOLERANCE:
                    grown.append((prefix + letter, extended))
        partial = grown
        if not partial:
            break
    return [Generated(text, math.exp(log_prob)) for text, log_prob in sorted(partial)]


class MismatchTable:
    """Letters other than the heavy one that some generated string may use.

    Keeps (i, a) with ratio Pr[P[i] = a] / Pr[P[i] = heavy(P)[i]], restricted to
    entries that can appear in a string of probability at least 1/z and trimmed
    to the z largest ratios.
    """

    def __init__(self, pattern: WeightedString, z: float):
        heavy = pattern.heavy()
        self.heavy = heavy.text
        self.heavy_log = float(math.fsum(math.log(p) for p in heavy.probs)) if len(heavy) else 0.0
        floor_log = math.log(1.0 / z)
        candidates = []
        for i in range(len(pattern)):
            column = pattern[i]
            top = column[self.heavy[i]]
            for letter, prob in column.items():
                if letter == self.heavy[i]:
                    continue
                ratio = prob / top
                if self.heavy_log + math.log(ratio) >= floor_log - REL_TOLERANCE:
                    candidates.append((ratio, i, letter))
        kept = heapq.nlargest(max(1, math.floor(z)), candidates)
        self.ratios: Dict[Tuple[int, str], float] = {(i, letter): ratio for ratio, i, letter in kept}

    def __len__(self) -> int:
        return len(self.ratios)

    def __contains__(self, item: Tuple[int, str]) -> bool:
        return item in self.ratios

    def ratio(self, i: int, letter: str) -> Optional[float]:
        return self.ratios.get((i, letter))


def _plain_params(params: Optional[FingerprintParams], seed: int) -> FingerprintParams:
    return params if params is not None else params_new(1_000_000, seed, Alphabet.open())


def _mismatch_budget(m: int, z: float, eps: Optional[float] = None) -> int:
    bound = z / (1 - eps) if eps is not None else z
    k = max(1, math.floor(math.log2(bound)))
    if k >= m:
        raise ConfigurationError(f"pattern of length {m} is too short for {k} mismatches; use the exact method")
    return k


class WeightedPatternMatcher:
    """Weighted pattern, plain text.

    :meth:`push` returns the probability with which the pattern matches the
    window ending at the new symbol, or None below 1/z.
    """

    def __init__(
        self,
        pattern: WeightedString,
        z: float,
        method: str = DICTIONARY,
        params: Optional[FingerprintParams] = None,
        seed: int = 0,
        prime_interval: Optional[Tuple[int, int]] = None,
    ):
        m = len(pattern)
        if not z > 1:
            raise ParameterError(f"z must exceed 1, got {z}")
        if z >= m:
            raise ConfigurationError(f"z must be smaller than the pattern length {m}, got {z}")
        if method not in (DICTIONARY, KMISMATCH):
            raise ConfigurationError(f"unknown method {method!r} for a weighted pattern")
        self.pattern = pattern
        self.z = z
        self.method = method
        self.params = _plain_params(params, seed)
        self.generated = enumerate_matching(pattern, z)
        self.dictionary = None
        self.kmismatch = None
        if method == DICTIONARY:
            if self.generated:
                self.dictionary = DictMatcher([g.text for g in self.generated], self.params)
        else:
            self.table = MismatchTable(pattern, z)
            k = _mismatch_budget(m, z)
            self.kmismatch = KMismatchMatcher(
                self.table.heavy, k, self.params, seed=seed, filter_kind=EXACT_WINDOW, prime_interval=prime_interval
            )
        logger.debug("weighted pattern: m=%d z=%s method=%s generated=%d", m, z, method, len(self.generated))

    def push(self, symbol: str) -> Optional[float]:
        if self.method == DICTIONARY:
            if self.dictionary is None:
                return None
            found = self.dictionary.push(symbol)
            return self.generated[found[0][0]].probability if found else None

        best = None
        for report in self.kmismatch.push(symbol):
            log_prob = self.table.heavy_log
            for c in report.corrections:
                ratio = self.table.ratio(c.position - 1, c.text_symbol)
                if ratio is None:
                    break
                log_prob += math.log(ratio)
            else:
                prob = math.exp(log_prob)
                if _reaches(prob, 1.0 / self.z):
                    best = prob
        return best


class WeightedTextMatcher:
    """Plain pattern, weighted text.

    Answers with the approximate probability (never below (1 - eps)/z) whenever
    some maximal matching suffix spells the pattern over the window.
    """

    def __init__(
        self,
        pattern: str,
        z: float,
        eps: float,
        method: str = EXACTPM,
        params: Optional[FingerprintParams] = None,
        seed: int = 0,
        prime_interval: Optional[Tuple[int, int]] = None,
    ):
        if not 0 < eps < 0.5:
            raise ParameterError(f"epsilon must lie in (0, 1/2), got {eps}")
        if not pattern:
            raise ParameterError("pattern must not be empty")
        if method not in (EXACTPM, KMISMATCH):
            raise ConfigurationError(f"unknown method {method!r} for a weighted text")
        self.pattern = pattern
        self.z = z
        self.eps = eps
        self.method = method
        self.params = _plain_params(params, seed)
        self.threshold = (1 - eps) / z
        self.kmismatch = None
        if method == EXACTPM:
            factory = lambda: ExactMatcher(pattern, self.params)
        else:
            factory = None
            k = _mismatch_budget(len(pattern), z, eps)
            self.kmismatch = KMismatchMatcher(pattern, k, self.params, seed=seed, prime_interval=prime_interval)
        self.streams = SuffixStreamSet(len(pattern), z, eps, factory)

    def push(self, symbol: Mapping[str, float]) -> Optional[float]:
        check_symbol(symbol)
        streams = self.streams
        streams.push(symbol)
        q = streams.time

        if self.kmismatch is None:
            value = streams.best(lambda s: bool(s.found))
        else:
            reports = self.kmismatch.push(streams.heavy)
            keyed = streams.by_window_key()
            value = None
            low = q - len(self.pattern) + 1
            for report in reports:
                key = tuple((low + c.position - 1, c.pattern_symbol) for c in report.corrections)
                found = keyed.get(key)
                if found is not None and (value is None or found > value):
                    value = found
        if value is None or not _reaches(value, self.threshold):
            return None
        return value


class WeightedBothMatcher:
    """Weighted pattern and weighted text.

    Yes when some string generated by the pattern with probability at least 1/z
    is spelled over the window by a maximal matching suffix whose approximate
    probability reaches (1 - eps)/z.
    """

    def __init__(
        self,
        pattern: WeightedString,
        z: float,
        eps: float,
        method: str = DICTIONARY,
        params: Optional[FingerprintParams] = None,
        seed: int = 0,
        prime_interval: Optional[Tuple[int, int]] = None,
    ):
        if not 0 < eps < 0.5:
            raise ParameterError(f"epsilon must lie in (0, 1/2), got {eps}")
        if len(pattern) == 0:
            raise ParameterError("pattern must not be empty")
        if method not in (DICTIONARY, KMISMATCH):
            raise ConfigurationError(f"unknown method {method!r} for two weighted strings")
        self.pattern = pattern
        self.z = z
        self.eps = eps
        self.method = method
        self.params = _plain_params(params, seed)
        self.threshold = (1 - eps) / z
        self.generated = enumerate_matching(pattern, z)
        texts = [g.text for g in self.generated]
        self.kmismatch: List[KMismatchMatcher] = []
        factory = None
        if method == DICTIONARY:
            if texts:
                factory = lambda: DictMatcher(texts, self.params)
        else:
            k = _mismatch_budget(len(pattern), z, eps)
            self.kmismatch = [
                KMismatchMatcher(text, k, self.params, seed=seed, prime_interval=prime_interval) for text in texts
            ]
        self.streams = SuffixStreamSet(len(pattern), z, eps, factory)

    def push(self, symbol: Mapping[str, float]) -> Optional[float]:
        check_symbol(symbol)
        streams = self.streams
        streams.push(symbol)
        q = streams.time

        if self.method == DICTIONARY:
            if not self.generated:
                return None
            value = streams.best(lambda s: bool(s.found))
        else:
            value = None
            keyed = None
            low = q - len(self.pattern) + 1
            for matcher in self.kmismatch:
                reports = matcher.push(streams.heavy)
                if not reports:
                    continue
                if keyed is None:
                    keyed = streams.by_window_key()
                for report in reports:
                    key = tuple((low + c.position - 1, c.pattern_symbol) for c in report.corrections)
                    found = keyed.get(key)
                    if found is not None and (value is None or found > value):
                        value = found
        if value is None or not _reaches(value, self.threshold):
            return None
        return value


def wpst_new(pattern: WeightedString, z: float, method: str = DICTIONARY, **kwargs) -> WeightedPatternMatcher:
    return WeightedPatternMatcher(pattern, z, method, **kwargs)


def spwt_new(pattern: str, z: float, eps: float, method: str = EXACTPM, **kwargs) -> WeightedTextMatcher:
    return WeightedTextMatcher(pattern, z, eps, method, **kwargs)


def wpwt_new(pattern: WeightedString, z: float, eps: float, method: str = DICTIONARY, **kwargs) -> WeightedBothMatcher:
    return WeightedBothMatcher(pattern, z, eps, method, **kwargs)

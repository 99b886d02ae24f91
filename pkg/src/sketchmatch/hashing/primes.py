"""Prime sets for sketch localisation and for the k-mismatch partitions."""

import logging
import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import nextprime, primerange
from sympy.ntheory.modular import crt

from ..errors import ConfigurationError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeSet:
    """Ascending primes whose product exceeds ``target_len``."""

    primes: Tuple[int, ...]
    target_len: int

    def __post_init__(self):
        if not self.primes:
            raise ParameterError("a prime set cannot be empty")
        if math.prod(self.primes) <= self.target_len:
            raise ParameterError(
                f"product of {self.primes} does not exceed {self.target_len}; CRT would be ambiguous"
            )

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def default_prime_set(m: int) -> PrimeSet:
    """All primes in [log m, 2 log m], extended upward until their product exceeds m.

    The interval is [max(2, floor(log2 m)), max(lo, 2 * ceil(log2 m))].
    """
    if m < 1:
        raise ParameterError("m must be at least 1")
    floor_log = m.bit_length() - 1
    ceil_log = (m - 1).bit_length()
    lo = max(2, floor_log)
    hi = max(lo, 2 * ceil_log)

    primes: List[int] = [int(q) for q in primerange(lo, hi + 1)]
    if not primes:
        primes = [int(nextprime(lo - 1))]
    while math.prod(primes) <= m:
        primes.append(int(nextprime(primes[-1])))
    return PrimeSet(tuple(primes), m)


def reconstruct_position(primes: Sequence[int], residues: Sequence[int]) -> Optional[int]:
    """Smallest non-negative x with x = residues[i] mod primes[i], or None."""
    solution = crt(list(primes), list(residues))
    if solution is None:
        return None
    return int(solution[0])


def default_prime_interval(m: int, k: int) -> Tuple[int, int]:
    """[k log^2 m, 34 k log^2 m] rounded outward to integers."""
    log_m = math.log2(m) if m > 1 else 1.0
    base = k * log_m * log_m
    return max(2, math.floor(base)), math.ceil(34 * base)


def sample_primes(count: int, lo: int, hi: int, seed: int) -> Tuple[int, ...]:
    """``count`` distinct primes drawn uniformly from [lo, hi], sorted ascending.

    Raises:
        ConfigurationError: If the interval holds fewer than ``count`` primes.
    """
    pool = [int(q) for q in primerange(max(2, lo), hi + 1)]
    if len(pool) < count:
        raise ConfigurationError(
            f"interval [{lo}, {hi}] contains {len(pool)} primes but {count} are needed; widen the interval"
        )
    return tuple(sorted(random.Random(seed).sample(pool, count)))

"""1-mismatch sketches: per-residue-class fingerprints and their algebra.

For a prime q, lane t (0-based) of the sketch of X fingerprints the subsequence
X[t+1] X[t+1+q] X[t+1+2q] ... Two equal-length strings at Hamming distance one
differ in exactly one lane for every prime, and the lane indices pin the
mismatch position down by the Chinese remainder theorem.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from ..errors import IncompatibleError, LengthError, ParameterError
from .fingerprint import (
    Fingerprint,
    FingerprintParams,
    fp_append_code,
    fp_concat,
    fp_cut_prefix,
    fp_cut_suffix,
    fp_empty,
    fp_of_codes,
    recover_difference,
)
from .primes import PrimeSet, reconstruct_position

logger = logging.getLogger(__name__)

__all__ = [
    "OneMismatchSketch",
    "SketchFamily",
    "VerdictKind",
    "MismatchVerdict",
    "sketch_build",
    "sketch_build_codes",
    "sketch_append",
    "sketch_append_code",
    "sketch_concat",
    "sketch_cut_prefix",
    "sketch_cut_suffix",
    "sketch_power",
    "sketch_empty",
    "family_build",
    "family_build_codes",
    "family_empty",
    "family_append",
    "family_append_code",
    "family_concat",
    "family_cut_prefix",
    "family_cut_suffix",
    "family_power",
    "locate_single_mismatch",
    "recover_difference",
]


@dataclass(frozen=True, slots=True)
class OneMismatchSketch:
    q: int
    length: int
    lanes: Tuple[Fingerprint, ...]


def _check_pair(a: OneMismatchSketch, b: OneMismatchSketch) -> int:
    if a.q != b.q:
        raise IncompatibleError(f"sketches use different primes ({a.q} and {b.q})")
    return a.q


def sketch_build_codes(codes: Sequence[int], q: int, params: FingerprintParams) -> OneMismatchSketch:
    if q < 2:
        raise ParameterError("sketch prime must be at least 2")
    lanes = tuple(fp_of_codes(codes[t::q], params) for t in range(q))
    return OneMismatchSketch(q, len(codes), lanes)


def sketch_build(text: Sequence[str], q: int, params: FingerprintParams) -> OneMismatchSketch:
    """Sketch of a symbol sequence for the prime q."""
    return sketch_build_codes([params.encode(symbol) for symbol in text], q, params)


def sketch_append_code(s: OneMismatchSketch, code: int) -> OneMismatchSketch:
    t = s.length % s.q
    lanes = s.lanes
    return OneMismatchSketch(s.q, s.length + 1, lanes[:t] + (fp_append_code(lanes[t], code),) + lanes[t + 1:])


def sketch_append(s: OneMismatchSketch, symbol: str) -> OneMismatchSketch:
    return sketch_append_code(s, s.lanes[0].params.encode(symbol))


def sketch_concat(a: OneMismatchSketch, b: OneMismatchSketch) -> OneMismatchSketch:
    """Sketch of XY; lane j of Y lands in lane (|X| + j) mod q of XY."""
    q = _check_pair(a, b)
    shift = a.length
    lanes = tuple(fp_concat(a.lanes[t], b.lanes[(t - shift) % q]) for t in range(q))
    return OneMismatchSketch(q, a.length + b.length, lanes)


def sketch_cut_prefix(z: OneMismatchSketch, x: OneMismatchSketch) -> OneMismatchSketch:
    """Sketch of Y from the sketches of XY and X."""
    q = _check_pair(z, x)
    if x.length > z.length:
        raise LengthError(f"prefix of length {x.length} exceeds string of length {z.length}")
    shift = x.length
    lanes = tuple(fp_cut_prefix(z.lanes[(shift + t) % q], x.lanes[(shift + t) % q]) for t in range(q))
    return OneMismatchSketch(q, z.length - x.length, lanes)


def sketch_cut_suffix(z: OneMismatchSketch, y: OneMismatchSketch) -> OneMismatchSketch:
    """Sketch of X from the sketches of XY and Y."""
    q = _check_pair(z, y)
    if y.length > z.length:
        raise LengthError(f"suffix of length {y.length} exceeds string of length {z.length}")
    shift = z.length - y.length
    lanes = tuple(fp_cut_suffix(z.lanes[t], y.lanes[(t - shift) % q]) for t in range(q))
    return OneMismatchSketch(q, shift, lanes)


def sketch_empty(q: int, params: FingerprintParams) -> OneMismatchSketch:
    empty = fp_empty(params)
    return OneMismatchSketch(q, 0, (empty,) * q)


def sketch_power(x: OneMismatchSketch, alpha: int) -> OneMismatchSketch:
    """Sketch of alpha copies of X in O(q log alpha) fingerprint operations."""
    if alpha < 0:
        raise ParameterError("alpha must be non-negative")
    result = sketch_empty(x.q, x.lanes[0].params)
    base = x
    while alpha:
        if alpha & 1:
            result = sketch_concat(result, base)
        alpha >>= 1
        if alpha:
            base = sketch_concat(base, base)
    return result


@dataclass(frozen=True)
class SketchFamily:
    """Sketches of one string for every prime of a prime set."""

    primes: PrimeSet
    length: int
    sketches: Dict[int, OneMismatchSketch]
    params: FingerprintParams

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SketchFamily):
            return NotImplemented
        return self.length == other.length and self.sketches == other.sketches

    def __getitem__(self, q: int) -> OneMismatchSketch:
        return self.sketches[q]


def _families(a: SketchFamily, b: SketchFamily) -> PrimeSet:
    if a.primes.primes != b.primes.primes:
        raise IncompatibleError("sketch families use different prime sets")
    if a.params is not b.params and a.params != b.params:
        raise IncompatibleError("sketch families were built with different parameters")
    return a.primes


def family_build_codes(codes: Sequence[int], primes: PrimeSet, params: FingerprintParams) -> SketchFamily:
    codes = list(codes)
    return SketchFamily(primes, len(codes), {q: sketch_build_codes(codes, q, params) for q in primes}, params)


def family_build(text: Iterable[str], primes: PrimeSet, params: FingerprintParams) -> SketchFamily:
    return family_build_codes([params.encode(symbol) for symbol in text], primes, params)


def family_empty(primes: PrimeSet, params: FingerprintParams) -> SketchFamily:
    return SketchFamily(primes, 0, {q: sketch_empty(q, params) for q in primes}, params)


def family_append_code(f: SketchFamily, code: int) -> SketchFamily:
    return SketchFamily(
        f.primes, f.length + 1, {q: sketch_append_code(s, code) for q, s in f.sketches.items()}, f.params
    )


def family_append(f: SketchFamily, symbol: str) -> SketchFamily:
    return family_append_code(f, f.params.encode(symbol))


def family_concat(a: SketchFamily, b: SketchFamily) -> SketchFamily:
    primes = _families(a, b)
    return SketchFamily(
        primes, a.length + b.length, {q: sketch_concat(a.sketches[q], b.sketches[q]) for q in primes}, a.params
    )


def family_cut_prefix(z: SketchFamily, x: SketchFamily) -> SketchFamily:
    primes = _families(z, x)
    if x.length > z.length:
        raise LengthError(f"prefix of length {x.length} exceeds string of length {z.length}")
    return SketchFamily(
        primes, z.length - x.length, {q: sketch_cut_prefix(z.sketches[q], x.sketches[q]) for q in primes}, z.params
    )


def family_cut_suffix(z: SketchFamily, y: SketchFamily) -> SketchFamily:
    primes = _families(z, y)
    if y.length > z.length:
        raise LengthError(f"suffix of length {y.length} exceeds string of length {z.length}")
    return SketchFamily(
        primes, z.length - y.length, {q: sketch_cut_suffix(z.sketches[q], y.sketches[q]) for q in primes}, z.params
    )


def family_power(x: SketchFamily, alpha: int) -> SketchFamily:
    return SketchFamily(
        x.primes, x.length * alpha, {q: sketch_power(s, alpha) for q, s in x.sketches.items()}, x.params
    )


class VerdictKind(enum.Enum):
    EQUAL = "equal"
    SINGLE = "single"
    MANY = "many"


@dataclass(frozen=True)
class MismatchVerdict:
    """Outcome of comparing two sketch families.

    For SINGLE, ``position`` is 1-based and ``difference`` is A[j] - B[j] mod p.
    """

    kind: VerdictKind
    position: Optional[int] = None
    difference: Optional[int] = None

    @property
    def is_single(self) -> bool:
        return self.kind is VerdictKind.SINGLE


EQUAL = MismatchVerdict(VerdictKind.EQUAL)
MANY = MismatchVerdict(VerdictKind.MANY)


def locate_single_mismatch(a: SketchFamily, b: SketchFamily) -> MismatchVerdict:
    """Classify two equal-length strings as equal, one mismatch, or more.

    Raises:
        IncompatibleError: If the lengths or prime sets differ.
    """
    primes = _families(a, b)
    if a.length != b.length:
        raise IncompatibleError(f"cannot compare lengths {a.length} and {b.length}")

    differing = {}
    for q in primes:
        lanes_a, lanes_b = a.sketches[q].lanes, b.sketches[q].lanes
        diff = [t for t in range(q) if lanes_a[t].value != lanes_b[t].value]
        if len(diff) > 1:
            return MANY
        differing[q] = diff

    counts = {len(diff) for diff in differing.values()}
    if counts == {0}:
        return EQUAL
    if counts != {1}:
        return MANY

    residues = [differing[q][0] for q in primes]
    x = reconstruct_position(primes.primes, residues)
    if x is None or x >= a.length:
        return MANY
    position = x + 1

    differences = set()
    for q in primes:
        t = x % q
        differences.add(recover_difference(a.sketches[q].lanes[t], b.sketches[q].lanes[t], x // q + 1))
    if len(differences) != 1:
        logger.warning("recovered differences disagree across primes at position %d", position)
        return MANY
    difference = differences.pop()
    if difference == 0:
        return MANY
    return MismatchVerdict(VerdictKind.SINGLE, position, difference)

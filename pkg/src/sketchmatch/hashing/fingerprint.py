"""Rabin-Karp fingerprints over a prime field.

The fingerprint of X = X[1..l] is phi(X) = sum X[i] * r^i mod p. Each value also
carries r^l and r^-l so that, given two of phi(X), phi(Y), phi(XY), the third one
costs O(1) field operations.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from sympy import isprime, nextprime

from ..errors import IncompatibleError, LengthError, ParameterError
from .alphabet import Alphabet

logger = logging.getLogger(__name__)

# Lower bound on the modulus independent of the text length.
MODULUS_FLOOR = 2**61


@dataclass(frozen=True)
class FingerprintParams:
    """Field and encoding shared by every fingerprint that may be compared."""

    p: int
    r: int
    alphabet: Alphabet = field(default_factory=Alphabet.open)
    r_inv: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 2 or not isprime(self.p):
            raise ParameterError(f"modulus {self.p} is not prime")
        if not 1 <= self.r < self.p:
            raise ParameterError(f"evaluation point must lie in [1, p-1], got {self.r}")
        object.__setattr__(self, "r_inv", pow(self.r, -1, self.p))

    def encode(self, symbol: str) -> int:
        return self.alphabet.encode(symbol)


def params_new(max_text_len: int, seed: int, alphabet: Optional[Alphabet] = None) -> FingerprintParams:
    """Choose a modulus and a random evaluation point.

    The modulus is the smallest prime above max(max_text_len^3, 2^61), so it does
    not depend on the seed; only r does.

    Args:
        max_text_len: Longest text the fingerprints will be compared over.
        seed: Seed for drawing r.
        alphabet: Letter encoding; defaults to the open alphabet.

    Returns:
        Deterministic parameters for the given inputs.
    """
    if max_text_len < 1:
        raise ParameterError("max_text_len must be at least 1")
    p = int(nextprime(max(max_text_len**3, MODULUS_FLOOR)))
    r = random.Random(seed).randrange(1, p)
    logger.debug("fingerprint params: p=%d r=%d (n=%d, seed=%d)", p, r, max_text_len, seed)
    return FingerprintParams(p=p, r=r, alphabet=alphabet if alphabet is not None else Alphabet.open())


@dataclass(frozen=True, slots=True)
class Fingerprint:
    """phi of a string of ``length`` symbols, with r^length and r^-length."""

    value: int
    length: int
    r_pow: int
    r_pow_inv: int
    params: FingerprintParams = field(compare=False, repr=False)


def _check_same(a: Fingerprint, b: Fingerprint) -> FingerprintParams:
    if a.params is not b.params and a.params != b.params:
        raise IncompatibleError("fingerprints were built with different parameters")
    return a.params


def fp_empty(params: FingerprintParams) -> Fingerprint:
    return Fingerprint(0, 0, 1, 1, params)


def fp_append_code(f: Fingerprint, code: int) -> Fingerprint:
    """Extend by one already-encoded symbol."""
    params = f.params
    p = params.p
    r_pow = f.r_pow * params.r % p
    return Fingerprint((f.value + code * r_pow) % p, f.length + 1, r_pow, f.r_pow_inv * params.r_inv % p, params)


def fp_append(f: Fingerprint, symbol: str) -> Fingerprint:
    return fp_append_code(f, f.params.encode(symbol))


def fp_of_codes(codes: Iterable[int], params: FingerprintParams) -> Fingerprint:
    p, r = params.p, params.r
    value, length, r_pow = 0, 0, 1
    for code in codes:
        r_pow = r_pow * r % p
        value = (value + code * r_pow) % p
        length += 1
    return Fingerprint(value, length, r_pow, pow(params.r_inv, length, p), params)


def fp_of(text: Iterable[str], params: FingerprintParams) -> Fingerprint:
    """Fingerprint of a symbol sequence.

    Raises:
        EncodingError: If a symbol is outside the alphabet.
    """
    return fp_of_codes((params.encode(symbol) for symbol in text), params)


def fp_concat(a: Fingerprint, b: Fingerprint) -> Fingerprint:
    """phi(XY) from phi(X) and phi(Y)."""
    params = _check_same(a, b)
    p = params.p
    return Fingerprint(
        (a.value + a.r_pow * b.value) % p,
        a.length + b.length,
        a.r_pow * b.r_pow % p,
        a.r_pow_inv * b.r_pow_inv % p,
        params,
    )


def fp_cut_prefix(z: Fingerprint, x: Fingerprint) -> Fingerprint:
    """phi(Y) from phi(XY) and phi(X).

    Raises:
        LengthError: If x is longer than z.
    """
    params = _check_same(z, x)
    if x.length > z.length:
        raise LengthError(f"prefix of length {x.length} exceeds string of length {z.length}")
    p = params.p
    return Fingerprint(
        (z.value - x.value) * x.r_pow_inv % p,
        z.length - x.length,
        z.r_pow * x.r_pow_inv % p,
        z.r_pow_inv * x.r_pow % p,
        params,
    )


def fp_cut_suffix(z: Fingerprint, y: Fingerprint) -> Fingerprint:
    """phi(X) from phi(XY) and phi(Y).

    Raises:
        LengthError: If y is longer than z.
    """
    params = _check_same(z, y)
    if y.length > z.length:
        raise LengthError(f"suffix of length {y.length} exceeds string of length {z.length}")
    p = params.p
    x_r_pow = z.r_pow * y.r_pow_inv % p
    return Fingerprint(
        (z.value - x_r_pow * y.value) % p,
        z.length - y.length,
        x_r_pow,
        z.r_pow_inv * y.r_pow % p,
        params,
    )


def fp_power(x: Fingerprint, alpha: int) -> Fingerprint:
    """phi of alpha concatenated copies, by repeated squaring."""
    if alpha < 0:
        raise ParameterError("alpha must be non-negative")
    result = fp_empty(x.params)
    base = x
    while alpha:
        if alpha & 1:
            result = fp_concat(result, base)
        alpha >>= 1
        if alpha:
            base = fp_concat(base, base)
    return result


def recover_difference(fx: Fingerprint, fy: Fingerprint, j: int) -> int:
    """X[j] - Y[j] mod p for equal-length strings differing only at position j.

    Nothing can be checked locally: strings differing elsewhere yield garbage.
    """
    params = _check_same(fx, fy)
    p = params.p
    return (fx.value - fy.value) * pow(params.r_inv, j, p) % p

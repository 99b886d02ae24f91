"""Fingerprints, prime sets and 1-mismatch sketches."""

from .alphabet import Alphabet
from .fingerprint import Fingerprint, FingerprintParams, params_new
from .mismatch_sketch import SketchFamily, locate_single_mismatch
from .primes import PrimeSet, default_prime_set

__all__ = [
    "Alphabet",
    "Fingerprint",
    "FingerprintParams",
    "params_new",
    "PrimeSet",
    "default_prime_set",
    "SketchFamily",
    "locate_single_mismatch",
]

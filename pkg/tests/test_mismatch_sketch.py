import random
import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from sketchmatch.errors import IncompatibleError, LengthError
from sketchmatch.hashing.fingerprint import params_new
from sketchmatch.hashing.mismatch_sketch import (
    VerdictKind,
    family_append,
    family_build,
    family_concat,
    family_cut_prefix,
    family_cut_suffix,
    family_empty,
    family_power,
    locate_single_mismatch,
    sketch_append,
    sketch_build,
    sketch_concat,
    sketch_cut_prefix,
    sketch_cut_suffix,
    sketch_empty,
    sketch_power,
)
from sketchmatch.hashing.primes import PrimeSet, default_prime_set


class TestSketchAlgebra(unittest.TestCase):

    def setUp(self):
        self.params = params_new(10_000, seed=1)
        self.rng = random.Random(5)

    def random_text(self, n, letters="abcd"):
        return "".join(self.rng.choice(letters) for _ in range(n))

    def test_concat_and_cuts_match_direct_build(self):
        for _ in range(150):
            q = self.rng.choice([2, 3, 5, 7, 11])
            x = self.random_text(self.rng.randint(0, 50))
            y = self.random_text(self.rng.randint(0, 50))
            sx, sy, sxy = (sketch_build(s, q, self.params) for s in (x, y, x + y))
            self.assertEqual(sketch_concat(sx, sy), sxy)
            self.assertEqual(sketch_cut_prefix(sxy, sx), sy)
            self.assertEqual(sketch_cut_suffix(sxy, sy), sx)

    def test_append_matches_direct_build(self):
        for q in (2, 3, 7):
            x = self.random_text(self.rng.randint(0, 40))
            s = sketch_empty(q, self.params)
            for c in x:
                s = sketch_append(s, c)
            self.assertEqual(s, sketch_build(x, q, self.params))
            self.assertEqual(s.length, len(x))

    def test_power(self):
        for alpha in (0, 1, 3, 8, 13):
            x = self.random_text(self.rng.randint(1, 9))
            self.assertEqual(sketch_power(sketch_build(x, 5, self.params), alpha), sketch_build(x * alpha, 5, self.params))

    def test_different_primes_are_incompatible(self):
        with self.assertRaises(IncompatibleError):
            sketch_concat(sketch_build("ab", 3, self.params), sketch_build("ab", 5, self.params))

    def test_cut_too_long_fails(self):
        with self.assertRaises(LengthError):
            sketch_cut_prefix(sketch_build("ab", 3, self.params), sketch_build("abc", 3, self.params))


class TestSketchFamily(unittest.TestCase):

    def setUp(self):
        self.params = params_new(10_000, seed=2)
        self.primes = default_prime_set(256)
        self.rng = random.Random(9)

    def family(self, text):
        return family_build(text, self.primes, self.params)

    def test_family_algebra(self):
        x, y = "abcabcaab", "cabbbac"
        fx, fy, fxy = self.family(x), self.family(y), self.family(x + y)
        self.assertEqual(family_concat(fx, fy), fxy)
        self.assertEqual(family_cut_prefix(fxy, fx), fy)
        self.assertEqual(family_cut_suffix(fxy, fy), fx)
        self.assertEqual(family_power(fx, 3), self.family(x * 3))

    def test_streaming_growth(self):
        grown = family_empty(self.primes, self.params)
        for c in "abcdabcd":
            grown = family_append(grown, c)
        self.assertEqual(grown, self.family("abcdabcd"))

    def test_equal_strings(self):
        self.assertIs(locate_single_mismatch(self.family("abcab"), self.family("abcab")).kind, VerdictKind.EQUAL)

    def test_planted_single_mismatch(self):
        for _ in range(200):
            m = self.rng.randint(1, 256)
            a = [self.rng.choice("ACGT") for _ in range(m)]
            b = list(a)
            j = self.rng.randrange(m)
            b[j] = self.rng.choice([c for c in "ACGT" if c != a[j]])
            verdict = locate_single_mismatch(self.family(a), self.family(b))
            self.assertTrue(verdict.is_single)
            self.assertEqual(verdict.position, j + 1)
            expected = (self.params.encode(a[j]) - self.params.encode(b[j])) % self.params.p
            self.assertEqual(verdict.difference, expected)

    def test_two_mismatches(self):
        verdict = locate_single_mismatch(self.family("aaaaaaaa"), self.family("abaaaaab"))
        self.assertIs(verdict.kind, VerdictKind.MANY)

    def test_length_mismatch_is_rejected(self):
        with self.assertRaises(IncompatibleError):
            locate_single_mismatch(self.family("ab"), self.family("abc"))

    def test_different_prime_sets_are_rejected(self):
        other = family_build("ab", PrimeSet((5, 7), 30), self.params)
        with self.assertRaises(IncompatibleError):
            family_concat(self.family("ab"), other)


if __name__ == '__main__':
    unittest.main()

import random
import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from sketchmatch.errors import EncodingError, IncompatibleError, LengthError, ParameterError
from sketchmatch.hashing.alphabet import Alphabet
from sketchmatch.hashing.fingerprint import (
    FingerprintParams,
    fp_append,
    fp_concat,
    fp_cut_prefix,
    fp_cut_suffix,
    fp_empty,
    fp_of,
    fp_power,
    params_new,
    recover_difference,
)


class TestAlphabet(unittest.TestCase):

    def test_closed_alphabet_codes_in_order(self):
        alphabet = Alphabet("ACGT")
        self.assertEqual(alphabet.encode_all("TGCA"), [4, 3, 2, 1])
        self.assertEqual(alphabet.decode(2), "C")
        self.assertEqual(len(alphabet), 4)
        self.assertIn("G", alphabet)

    def test_closed_alphabet_rejects_unknown_letters(self):
        alphabet = Alphabet("ab")
        with self.assertRaises(EncodingError):
            alphabet.encode("c")
        with self.assertRaises(EncodingError):
            alphabet.decode(3)

    def test_open_alphabet(self):
        alphabet = Alphabet.open()
        self.assertTrue(alphabet.is_open)
        self.assertEqual(alphabet.encode("a"), ord("a") + 1)
        self.assertEqual(alphabet.decode(ord("z") + 1), "z")
        with self.assertRaises(EncodingError):
            alphabet.decode(0)


class TestFingerprint(unittest.TestCase):

    def setUp(self):
        self.params = params_new(1000, seed=7)
        self.rng = random.Random(11)

    def random_text(self, n):
        return "".join(self.rng.choice("ab") for _ in range(n))

    def test_params_are_deterministic(self):
        self.assertEqual(params_new(1000, 3), params_new(1000, 3))
        self.assertGreaterEqual(self.params.p, 2**61)

    def test_params_validation(self):
        with self.assertRaises(ParameterError):
            FingerprintParams(p=15, r=2)
        with self.assertRaises(ParameterError):
            FingerprintParams(p=13, r=13)
        with self.assertRaises(ParameterError):
            params_new(0, 1)

    def test_empty_string(self):
        empty = fp_empty(self.params)
        self.assertEqual(fp_of("", self.params), empty)
        self.assertEqual(empty.value, 0)
        self.assertEqual(empty.length, 0)

    def test_direct_formula(self):
        p, r = self.params.p, self.params.r
        expected = sum(self.params.encode(c) * pow(r, i, p) for i, c in enumerate("abba", start=1)) % p
        self.assertEqual(fp_of("abba", self.params).value, expected)

    def test_append_matches_build(self):
        f = fp_empty(self.params)
        for c in "abcab":
            f = fp_append(f, c)
        self.assertEqual(f, fp_of("abcab", self.params))

    def test_concat_and_cuts(self):
        for _ in range(200):
            x = self.random_text(self.rng.randint(0, 40))
            y = self.random_text(self.rng.randint(0, 40))
            fx, fy, fxy = fp_of(x, self.params), fp_of(y, self.params), fp_of(x + y, self.params)
            self.assertEqual(fp_concat(fx, fy), fxy)
            self.assertEqual(fp_cut_prefix(fxy, fx), fy)
            self.assertEqual(fp_cut_suffix(fxy, fy), fx)

    def test_concat_is_associative(self):
        for _ in range(100):
            a, b, c = (fp_of(self.random_text(self.rng.randint(0, 20)), self.params) for _ in range(3))
            self.assertEqual(fp_concat(fp_concat(a, b), c), fp_concat(a, fp_concat(b, c)))

    def test_power(self):
        for alpha in (0, 1, 2, 5, 17, 64):
            self.assertEqual(fp_power(fp_of("abc", self.params), alpha), fp_of("abc" * alpha, self.params))
        with self.assertRaises(ParameterError):
            fp_power(fp_of("a", self.params), -1)

    def test_cut_longer_prefix_fails(self):
        with self.assertRaises(LengthError):
            fp_cut_prefix(fp_of("ab", self.params), fp_of("abc", self.params))
        with self.assertRaises(LengthError):
            fp_cut_suffix(fp_of("ab", self.params), fp_of("abc", self.params))

    def test_mixing_parameters_fails(self):
        other = params_new(1000, seed=8)
        with self.assertRaises(IncompatibleError):
            fp_concat(fp_of("a", self.params), fp_of("a", other))

    def test_recover_difference(self):
        x, y = "abcab", "abxab"
        d = recover_difference(fp_of(x, self.params), fp_of(y, self.params), 3)
        expected = (self.params.encode("c") - self.params.encode("x")) % self.params.p
        self.assertEqual(d, expected)


if __name__ == '__main__':
    unittest.main()

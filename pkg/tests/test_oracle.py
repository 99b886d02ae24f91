import random
import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from sketchmatch.errors import ParameterError
from sketchmatch.utils.oracle import (
    exhaustive_common_product,
    naive_common_product,
    naive_hamming_scan,
    naive_window_product,
    naive_wpm,
    numpy_hamming_distances,
)
from sketchmatch.weighted.weighted_string import WeightedString


def random_rows(rng, n, letters="abc"):
    rows = []
    for _ in range(n):
        weights = [rng.random() for _ in letters]
        total = sum(weights)
        rows.append({letter: w / total for letter, w in zip(letters, weights)})
    return WeightedString.from_rows(rows)


class TestHammingOracles(unittest.TestCase):

    def test_scan_example(self):
        self.assertEqual(
            naive_hamming_scan("abc", "abcaxc", 1),
            [(3, 0, []), (6, 1, [(2, "b", "x")])],
        )
        self.assertEqual(naive_hamming_scan("abc", "ab", 1), [])

    def test_numpy_agrees_with_scan(self):
        rng = random.Random(3)
        pattern = "".join(rng.choice("ab") for _ in range(7))
        text = "".join(rng.choice("ab") for _ in range(120))
        distances = numpy_hamming_distances(pattern, text)
        self.assertEqual(len(distances), len(text) - len(pattern) + 1)
        found = naive_hamming_scan(pattern, text, len(pattern))
        self.assertEqual([d for _, d, _ in found], [int(d) for d in distances])
        self.assertEqual(len(numpy_hamming_distances(pattern, "ab")), 0)


class TestProductOracles(unittest.TestCase):

    def test_window_product(self):
        found = naive_window_product([0.5, 0.5, 0.0, 1.0, 1.0], 2)
        self.assertIsNone(found[0])
        self.assertAlmostEqual(found[1], 0.25)
        self.assertEqual(found[2:], [0.0, 0.0, 1.0])

    def test_common_product_by_enumeration(self):
        rng = random.Random(8)
        pattern = random_rows(rng, 4)
        text = random_rows(rng, 9)
        for start in range(len(text) - len(pattern) + 1):
            self.assertAlmostEqual(
                naive_common_product(pattern, text, start), exhaustive_common_product(pattern, text, start)
            )

    def test_exhaustive_limit(self):
        pattern = WeightedString.from_string("a" * 13)
        with self.assertRaises(ParameterError):
            exhaustive_common_product(pattern, pattern, 0)

    def test_wpm_modes(self):
        pattern = WeightedString.from_rows([{"a": 0.5, "b": 0.5}, {"b": 1.0}])
        pw = naive_wpm(pattern, "abab", 4, "pw")
        self.assertAlmostEqual(pw[0], 0.5)
        self.assertIsNone(pw[1])
        self.assertAlmostEqual(pw[2], 0.5)
        text = WeightedString.from_rows([{"a": 1.0}, {"a": 0.2, "b": 0.8}, {"b": 1.0}])
        found = naive_wpm("ab", text, 4, "wt")
        self.assertAlmostEqual(found[0], 0.8)
        self.assertAlmostEqual(found[1], 0.2)
        both = naive_wpm(pattern, text, 4, "both")
        self.assertAlmostEqual(both[0], 0.8)
        self.assertAlmostEqual(both[1], 0.8)
        with self.assertRaises(ParameterError):
            naive_wpm(pattern, "abbb", 4, "neither")


if __name__ == '__main__':
    unittest.main()

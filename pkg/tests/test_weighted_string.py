import math
import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from sketchmatch.errors import InputFormatError, ParameterError
from sketchmatch.weighted.weighted_string import (
    WeightedString,
    check_symbol,
    format_weighted,
    heavy,
    heavy_letter,
    parse_weighted,
    parse_weighted_line,
)

class TestWeightedSymbols(unittest.TestCase):

    def test_check_symbol(self):
        check_symbol({"a": 0.25, "b": 0.75})
        with self.assertRaises(ParameterError):
            check_symbol({"a": 0.5, "b": 0.4})
        with self.assertRaises(ParameterError):
            check_symbol({"a": 1.5, "b": -0.5})
        with self.assertRaises(ParameterError):
            check_symbol({"ab": 1.0})
        with self.assertRaises(ParameterError):
            check_symbol({})

    def test_heavy_letter_tie_break(self):
        self.assertEqual(heavy_letter({"c": 0.5, "a": 0.5}), "a")
        self.assertEqual(heavy_letter({"c": 0.6, "a": 0.4}), "c")

    def test_parse_line(self):
        self.assertEqual(parse_weighted_line("A:0.7 C:0.3"), {"A": 0.7, "C": 0.3})
        self.assertIsNone(parse_weighted_line("   "))
        self.assertIsNone(parse_weighted_line("# comment"))
        self.assertEqual(parse_weighted_line("::1"), {":": 1.0})

class TestWeightedString(unittest.TestCase):

    def setUp(self):
        self.lines = ["A:0.7 C:0.3", "# skipped", "", "G:1", "A:0.5 T:0.5"]
        self.w = parse_weighted(self.lines)

    def test_parse(self):
        self.assertEqual(len(self.w), 3)
        self.assertEqual(self.w.letters, ("A", "C", "G", "T"))
        self.assertEqual(self.w[0], {"A": 0.7, "C": 0.3})
        self.assertEqual(self.w[1], {"G": 1.0})
        self.assertEqual(self.w.prob(2, "T"), 0.5)
        self.assertEqual(self.w.prob(2, "X"), 0.0)

    def test_heavy_string(self):
        h = heavy(self.w)
        self.assertEqual(h.text, "AGA")
        self.assertEqual(list(h.probs), [0.7, 1.0, 0.5])
        self.assertAlmostEqual(h.log_probability, math.log(0.35))

    def test_match_probability(self):
        self.assertAlmostEqual(self.w.match_probability("CGT"), 0.15)
        self.assertEqual(self.w.match_probability("CAT"), 0.0)
        self.assertAlmostEqual(self.w.match_probability("GA", start=1), 0.5)
        with self.assertRaises(ParameterError):
            self.w.match_probability("GAA", start=1)

    def test_format_round_trip(self):
        text = format_weighted(self.w)
        self.assertEqual(text, "A:0.7 C:0.3\nG:1\nA:0.5 T:0.5\n")
        again = parse_weighted(text.splitlines())
        self.assertEqual(again.letters, self.w.letters)
        self.assertTrue((again.probs == self.w.probs).all())

    def test_from_string(self):
        w = WeightedString.from_string("abba")
        self.assertEqual(heavy(w).text, "abba")
        self.assertEqual(w.match_probability("abba"), 1.0)

    def test_errors_carry_line_numbers(self):
        with self.assertRaises(InputFormatError) as ctx:
            parse_weighted(["A:1", "", "A:0.5 C:0.2"])
        self.assertEqual(ctx.exception.line_number, 3)
        self.assertIn("line 3", str(ctx.exception))
        with self.assertRaises(InputFormatError) as ctx:
            parse_weighted(["A:x"])
        self.assertEqual(ctx.exception.line_number, 1)
        with self.assertRaises(InputFormatError):
            parse_weighted(["A0.5 C:0.5"])
        with self.assertRaises(InputFormatError):
            parse_weighted(["A:0.5 A:0.5"])

if __name__ == '__main__':
    unittest.main()

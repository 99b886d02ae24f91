import random
import unittest
import os
import sys

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from sketchmatch.errors import ConfigurationError, ParameterError
from sketchmatch.utils.oracle import naive_wpm
from sketchmatch.weighted.suffix_streams import SuffixStreamSet
from sketchmatch.weighted.weighted_match import (
    DICTIONARY,
    EXACTPM,
    KMISMATCH,
    MismatchTable,
    enumerate_matching,
    spwt_new,
    wpst_new,
    wpwt_new,
)
from sketchmatch.weighted.weighted_string import WeightedString

TEST_INTERVAL = (5, 50)
SLACK = 1e-9


def random_weighted_text(rng, n, uncertain=0.5):
    rows = []
    for _ in range(n):
        letter = rng.choice("ab")
        if rng.random() < uncertain:
            p = rng.uniform(0.5, 0.95)
            other = "b" if letter == "a" else "a"
            rows.append({letter: p, other: 1 - p})
        else:
            rows.append({letter: 1.0})
    return WeightedString.from_rows(rows)


class TestEnumerateMatching(unittest.TestCase):

    def test_uniform_columns(self):
        pattern = WeightedString.from_rows([{"a": 0.5, "b": 0.5}, {"a": 0.5, "b": 0.5}])
        generated = enumerate_matching(pattern, 4)
        self.assertEqual([g.text for g in generated], ["aa", "ab", "ba", "bb"])
        for g in generated:
            self.assertAlmostEqual(g.probability, 0.25)
        self.assertEqual(enumerate_matching(pattern, 3), [])

    def test_rejects_small_z(self):
        with self.assertRaises(ParameterError):
            enumerate_matching(WeightedString.from_string("ab"), 1)

    def test_mismatch_table(self):
        pattern = WeightedString.from_rows([{"a": 0.75, "b": 0.25}, {"c": 1.0}, {"a": 0.75, "b": 0.25}])
        table = MismatchTable(pattern, 6)
        self.assertEqual(table.heavy, "aca")
        self.assertEqual(len(table), 2)
        self.assertAlmostEqual(table.ratio(0, "b"), 1 / 3)
        self.assertIn((2, "b"), table)
        self.assertIsNone(table.ratio(1, "a"))
        self.assertEqual(len(MismatchTable(pattern, 2)), 0)


class TestSuffixStreams(unittest.TestCase):

    def test_uniform_forks(self):
        streams = SuffixStreamSet(2, 2, 0.1)
        symbol = {"a": 0.5, "b": 0.5}
        streams.push(symbol)
        self.assertEqual(len(streams), 2)
        for _ in range(4):
            streams.push(symbol)
            streams.check_invariants()
            self.assertEqual(len(streams), 4)
        q = streams.time
        keyed = streams.by_window_key()
        self.assertEqual(set(keyed), {(), ((q, "b"),), ((q - 1, "b"),), ((q - 1, "b"), (q, "b"))})
        for value in keyed.values():
            self.assertAlmostEqual(value, 0.25)

    def test_unlikely_letters_restart(self):
        streams = SuffixStreamSet(2, 2, 0.1)
        streams.push({"a": 1.0})
        streams.push({"a": 0.2, "b": 0.2, "c": 0.2, "d": 0.2, "e": 0.2})
        self.assertEqual(len(streams), 0)
        streams.push({"b": 1.0})
        self.assertEqual(len(streams), 1)
        self.assertEqual(streams.streams[0].start, 3)

    def test_random_invariants(self):
        rng = random.Random(41)
        text = random_weighted_text(rng, 300, uncertain=0.8)
        for z in (2, 3.5, 8):
            streams = SuffixStreamSet(6, z, 0.1)
            for symbol in text:
                streams.push(symbol)
                streams.check_invariants()


class TestWeightedPatternMatcher(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(5)
        rows = [{c: 1.0} for c in "abbabaab"]
        rows[1] = {"a": 0.25, "b": 0.75}
        rows[4] = {"a": 0.25, "b": 0.75}
        self.pattern = WeightedString.from_rows(rows)
        self.z = 6
        generated = [g.text for g in enumerate_matching(self.pattern, self.z)]
        self.assertEqual(len(generated), 3)
        pieces = []
        while sum(map(len, pieces)) < 300:
            pieces.append(self.rng.choice(generated) if self.rng.random() < 0.4 else self.rng.choice("ab"))
        self.text = "".join(pieces)

    def expected(self):
        m = len(self.pattern)
        found = [None] * (m - 1)
        for value in naive_wpm(self.pattern, self.text, self.z, "pw"):
            found.append(value if value is not None and value >= 1 / self.z * (1 - SLACK) else None)
        return found

    def check_method(self, method):
        matcher = wpst_new(self.pattern, self.z, method, seed=2, prime_interval=TEST_INTERVAL)
        answers = [matcher.push(c) for c in self.text]
        expected = self.expected()
        self.assertEqual([a is None for a in answers], [e is None for e in expected])
        self.assertTrue(any(e is not None for e in expected))
        for a, e in zip(answers, expected):
            if e is not None:
                self.assertAlmostEqual(a, e)

    def test_dictionary_method(self):
        self.check_method(DICTIONARY)

    def test_kmismatch_method(self):
        self.check_method(KMISMATCH)

    def test_configuration_errors(self):
        with self.assertRaises(ConfigurationError):
            wpst_new(self.pattern, 8)
        with self.assertRaises(ConfigurationError):
            wpst_new(self.pattern, 4, "trie")
        with self.assertRaises(ParameterError):
            wpst_new(self.pattern, 0.5)


class TestWeightedTextMatchers(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(13)
        self.z = 4
        self.eps = 0.1

    def check_contract(self, answers, exact, m):
        hits = 0
        for q, answer in enumerate(answers, start=1):
            if q < m:
                self.assertIsNone(answer)
                continue
            value = exact[q - m]
            if answer is not None:
                hits += 1
                self.assertIsNotNone(value)
                self.assertLessEqual(answer, value * (1 + SLACK))
                self.assertGreaterEqual(answer, (1 - self.eps) * value * (1 - SLACK))
                self.assertGreaterEqual(answer, (1 - self.eps) / self.z * (1 - SLACK))
            if value is not None and value >= 1 / self.z:
                self.assertIsNotNone(answer)
        self.assertGreater(hits, 0)

    def test_plain_pattern(self):
        pattern = "abba"
        text = random_weighted_text(self.rng, 200)
        exact = naive_wpm(pattern, text, self.z, "wt")
        results = {}
        for method in (EXACTPM, KMISMATCH):
            matcher = spwt_new(pattern, self.z, self.eps, method, seed=1, prime_interval=TEST_INTERVAL)
            answers = []
            for symbol in text:
                answers.append(matcher.push(symbol))
                matcher.streams.check_invariants()
            self.check_contract(answers, exact, len(pattern))
            results[method] = answers
        for a, b in zip(results[EXACTPM], results[KMISMATCH]):
            if a is None or b is None:
                self.assertEqual(a, b)
            else:
                self.assertAlmostEqual(a, b)

    def test_weighted_pattern(self):
        pattern = WeightedString.from_rows([{"a": 1.0}, {"a": 0.5, "b": 0.5}, {"b": 1.0}, {"a": 0.7, "b": 0.3}])
        text = random_weighted_text(self.rng, 200)
        exact = naive_wpm(pattern, text, self.z, "both")
        for method in (DICTIONARY, KMISMATCH):
            matcher = wpwt_new(pattern, self.z, self.eps, method, seed=1, prime_interval=TEST_INTERVAL)
            answers = [matcher.push(symbol) for symbol in text]
            self.check_contract(answers, exact, len(pattern))

    def test_parameter_checks(self):
        with self.assertRaises(ParameterError):
            spwt_new("ab", 4, 0.6)
        with self.assertRaises(ConfigurationError):
            spwt_new("ab", 8, 0.1, KMISMATCH)
        with self.assertRaises(ConfigurationError):
            spwt_new("ab", 4, 0.1, DICTIONARY)
        with self.assertRaises(ParameterError):
            wpwt_new(WeightedString.from_string(""), 4, 0.1)
        matcher = spwt_new("ab", 4, 0.1)
        with self.assertRaises(ParameterError):
            matcher.push({"a": 0.5, "b": 0.4})


if __name__ == '__main__':
    unittest.main()

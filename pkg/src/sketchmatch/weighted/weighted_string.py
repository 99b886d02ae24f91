"""Weighted strings: one probability distribution over the alphabet per position.

Text format, one position per line::

    A:0.7 C:0.3
    # comment
    G:1

Omitted letters have probability zero and each line must sum to one.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence

import numpy as np

from ..errors import InputFormatError, ParameterError

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-9

WeightedSymbol = Dict[str, float]


def check_symbol(symbol: Mapping[str, float]) -> None:
    """Validate one distribution.

    Raises:
        ParameterError: If a probability lies outside [0, 1] or the sum is not one.
    """
    if not symbol:
        raise ParameterError("a weighted symbol needs at least one letter")
    for letter, prob in symbol.items():
        if not isinstance(letter, str) or len(letter) != 1:
            raise ParameterError(f"not a single letter: {letter!r}")
        if not 0.0 <= prob <= 1.0:
            raise ParameterError(f"probability of {letter!r} outside [0, 1]: {prob}")
    total = math.fsum(symbol.values())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ParameterError(f"probabilities sum to {total!r}, expected 1")


def heavy_letter(symbol: Mapping[str, float]) -> str:
    """Most probable letter; ties go to the smallest letter."""
    return min(symbol, key=lambda letter: (-symbol[letter], letter))


@dataclass(frozen=True)
class HeavyString:
    text: str
    probs: np.ndarray

    def __len__(self) -> int:
        return len(self.text)

    @property
    def log_probability(self) -> float:
        return float(np.sum(np.log(self.probs)))


class WeightedString:
    """A sequence of distributions stored as an (n, sigma) probability matrix.

    Columns follow the sorted alphabet, so ``argmax`` breaks ties toward the
    lexicographically smallest letter.
    """

    def __init__(self, letters: Sequence[str], probs: np.ndarray):
        self.letters = tuple(letters)
        self.probs = np.asarray(probs, dtype=float)
        self._columns = {letter: column for column, letter in enumerate(self.letters)}
        if self.probs.ndim != 2 or self.probs.shape[1] != len(self.letters):
            raise ParameterError("probability matrix does not match the alphabet")

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[str, float]]) -> "WeightedString":
        rows = [dict(row) for row in rows]
        for row in rows:
            check_symbol(row)
        letters = sorted({letter for row in rows for letter in row})
        probs = np.zeros((len(rows), len(letters)))
        columns = {letter: column for column, letter in enumerate(letters)}
        for i, row in enumerate(rows):
            for letter, prob in row.items():
                probs[i, columns[letter]] = prob
        return cls(letters, probs)

    @classmethod
    def from_string(cls, text: str) -> "WeightedString":
        """The deterministic weighted string of a plain string."""
        return cls.from_rows({letter: 1.0} for letter in text)

    def __len__(self) -> int:
        return self.probs.shape[0]

    def __getitem__(self, i: int) -> WeightedSymbol:
        row = self.probs[i]
        return {letter: float(row[c]) for c, letter in enumerate(self.letters) if row[c] > 0}

    def __iter__(self) -> Iterator[WeightedSymbol]:
        for i in range(len(self)):
            yield self[i]

    def prob(self, i: int, letter: str) -> float:
        column = self._columns.get(letter)
        return 0.0 if column is None else float(self.probs[i, column])

    def heavy(self) -> HeavyString:
        if len(self) == 0:
            return HeavyString("", np.zeros(0))
        columns = np.argmax(self.probs, axis=1)
        text = "".join(self.letters[c] for c in columns)
        return HeavyString(text, self.probs[np.arange(len(self)), columns])

    def match_probability(self, text: str, start: int = 0) -> float:
        """Probability that positions start .. start+len(text)-1 spell ``text``."""
        if start + len(text) > len(self):
            raise ParameterError("text runs past the end of the weighted string")
        logs = []
        for offset, letter in enumerate(text):
            p = self.prob(start + offset, letter)
            if p == 0.0:
                return 0.0
            logs.append(math.log(p))
        return math.exp(math.fsum(logs))


def heavy(w: WeightedString) -> HeavyString:
    return w.heavy()


def parse_weighted_line(line: str, line_number: Optional[int] = None) -> Optional[WeightedSymbol]:
    """Parse one ``LETTER:PROB`` line; blank and ``#`` lines give None.

    Raises:
        InputFormatError: If the line is malformed or does not sum to one.
    """
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    symbol: WeightedSymbol = {}
    for token in stripped.split():
        letter, sep, value = token.rpartition(":")
        if not sep or len(letter) != 1:
            raise InputFormatError(f"expected LETTER:PROB, got {token!r}", line_number)
        try:
            prob = float(value)
        except ValueError:
            raise InputFormatError(f"bad probability {value!r}", line_number) from None
        if letter in symbol:
            raise InputFormatError(f"letter {letter!r} given twice", line_number)
        symbol[letter] = prob
    try:
        check_symbol(symbol)
    except ParameterError as exc:
        raise InputFormatError(str(exc), line_number) from None
    return symbol


def iter_weighted_symbols(lines: Iterable[str]) -> Iterator[WeightedSymbol]:
    """Stream distributions from weighted-string lines."""
    for number, line in enumerate(lines, start=1):
        symbol = parse_weighted_line(line, number)
        if symbol is not None:
            yield symbol


def parse_weighted(lines: Iterable[str]) -> WeightedString:
    return WeightedString.from_rows(iter_weighted_symbols(lines))


def format_weighted(w: WeightedString) -> str:
    out: List[str] = []
    for symbol in w:
        out.append(" ".join(f"{letter}:{prob:.12g}" for letter, prob in sorted(symbol.items())))
    return "\n".join(out) + ("\n" if out else "")

"""Injective letter encodings onto the field elements 1..|alphabet|."""

from typing import Dict, Iterable, List, Optional, Sequence

from ..errors import EncodingError


class Alphabet:
    """Maps letters to codes 1..|Σ| and back.

    A closed alphabet only accepts the letters it was built with. An open
    alphabet accepts any character and encodes it as ``ord(c) + 1``, which keeps
    the map injective and never produces 0.
    """

    def __init__(self, letters: Optional[Iterable[str]] = None):
        if letters is None:
            self._codes: Optional[Dict[str, int]] = None
            self._letters: List[str] = []
            return

        self._letters = []
        self._codes = {}
        for letter in letters:
            if letter not in self._codes:
                self._letters.append(letter)
                self._codes[letter] = len(self._letters)
        if not self._letters:
            raise EncodingError("a closed alphabet needs at least one letter")

    @classmethod
    def open(cls) -> "Alphabet":
        """Alphabet accepting every character."""
        return cls(None)

    @property
    def is_open(self) -> bool:
        return self._codes is None

    @property
    def letters(self) -> List[str]:
        """Letters in code order (empty for an open alphabet)."""
        return list(self._letters)

    def __len__(self) -> int:
        return len(self._letters)

    def __contains__(self, letter: str) -> bool:
        if self._codes is None:
            return isinstance(letter, str) and len(letter) == 1
        return letter in self._codes

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self._codes == other._codes

    def __hash__(self) -> int:
        return hash(tuple(self._letters)) if self._codes is not None else hash("open")

    def __repr__(self) -> str:
        if self._codes is None:
            return "Alphabet.open()"
        return f"Alphabet({''.join(self._letters)!r})"

    def encode(self, letter: str) -> int:
        """Code of a single letter.

        Raises:
            EncodingError: If the letter is outside a closed alphabet.
        """
        if self._codes is None:
            if not isinstance(letter, str) or len(letter) != 1:
                raise EncodingError(f"not a single character: {letter!r}")
            return ord(letter) + 1
        try:
            return self._codes[letter]
        except KeyError:
            raise EncodingError(f"symbol {letter!r} is outside the alphabet") from None

    def encode_all(self, text: Sequence[str]) -> List[int]:
        return [self.encode(letter) for letter in text]

    def decode(self, code: int) -> str:
        """Letter of a code.

        Raises:
            EncodingError: If no letter has this code.
        """
        if self._codes is None:
            if 1 <= code <= 0x110000:
                return chr(code - 1)
        elif 1 <= code <= len(self._letters):
            return self._letters[code - 1]
        raise EncodingError(f"no letter has code {code}")

"""Ordered alphabets, words over them, and the letter/word rank statistics.

Letters are stored as indices into the alphabet, so the index order *is* the
letter order.  ``None`` stands for the empty word epsilon wherever a single
"letter or nothing" is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import InvalidInputError, UnsupportedOperationError

EPSILON = None


@dataclass(frozen=True)
class Alphabet:
    """A totally ordered set of display symbols.

    ``symbols`` lists the letters from smallest to largest, e.g. ``"CATG"``
    for the order C < A < T < G.  ``complement`` optionally maps each letter
    index to its partner under an involution (needed for reverse complements).
    """

    symbols: tuple[str, ...]
    complement: Optional[tuple[int, ...]] = None
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if len(symbols) < 2:
            raise InvalidInputError("an alphabet needs at least two letters")
        if len(set(symbols)) != len(symbols):
            raise InvalidInputError(f"duplicate letters in alphabet {''.join(symbols)!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})
        if self.complement is not None:
            comp = tuple(self.complement)
            if len(comp) != len(symbols) or any(comp[comp[i]] != i for i in range(len(comp))):
                raise InvalidInputError("complement must be an involution on the letters")
            object.__setattr__(self, "complement", comp)

    @classmethod
    def from_strings(cls, order: str = "ACGT", pairs: Optional[str] = "AT,CG") -> "Alphabet":
        """Build an alphabet from CLI-style flags: ``"ACGT"`` and ``"AT,CG"``."""
        symbols = tuple(order.strip().upper())
        if not pairs:
            return cls(symbols)
        index = {s: i for i, s in enumerate(symbols)}
        comp = list(range(len(symbols)))
        seen = set()
        for pair in pairs.upper().split(","):
            pair = pair.strip()
            if len(pair) != 2 or pair[0] not in index or pair[1] not in index:
                raise InvalidInputError(f"bad complement pair {pair!r}")
            x, y = index[pair[0]], index[pair[1]]
            if x in seen or y in seen:
                raise InvalidInputError(f"letter paired twice in {pairs!r}")
            seen.update((x, y))
            comp[x], comp[y] = y, x
        return cls(symbols, tuple(comp))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InvalidInputError(f"symbol {symbol!r} not in alphabet {''.join(self.symbols)!r}") from None

    def symbol(self, index: int) -> str:
        if not 0 <= index < len(self.symbols):
            raise InvalidInputError(f"letter index {index} out of range")
        return self.symbols[index]

    @property
    def max_letter(self) -> int:
        return len(self.symbols) - 1

    def word(self, text: str) -> "Word":
        """Parse an uppercase (or lowercase) symbol string into a Word."""
        return Word(tuple(self.index(c) for c in text.upper()), self)

    def __str__(self):
        return "".join(self.symbols)


DNA = Alphabet.from_strings("ACGT", "AT,CG")


@dataclass(frozen=True)
class Word:
    """A finite word, stored as letter indices over ``alphabet``."""

    letters: tuple[int, ...]
    alphabet: Alphabet = DNA

    def __post_init__(self):
        letters = tuple(self.letters)
        sigma = self.alphabet.size
        for a in letters:
            if not 0 <= a < sigma:
                raise InvalidInputError(f"letter index {a} out of range for alphabet of size {sigma}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.alphabet)
        return self.letters[item]

    def __str__(self):
        return "".join(self.alphabet.symbols[a] for a in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __add__(self, other: "Word") -> "Word":
        _check_same_alphabet(self, other)
        return Word(self.letters + other.letters, self.alphabet)

    def __lt__(self, other):
        return lex_compare(self, other) < 0

    def __le__(self, other):
        return lex_compare(self, other) <= 0

    def __gt__(self, other):
        return lex_compare(self, other) > 0

    def __ge__(self, other):
        return lex_compare(self, other) >= 0


def _check_same_alphabet(x: Word, y: Word):
    if x.alphabet != y.alphabet:
        raise InvalidInputError("words are over different alphabets")


def phi_gt(alphabet: Alphabet, a: Optional[int]) -> int:
    """Number of letters strictly greater than ``a``; ``None`` (epsilon) gives sigma."""
    if a is None:
        return alphabet.size
    if not 0 <= a < alphabet.size:
        raise InvalidInputError(f"letter index {a} out of range")
    return alphabet.size - 1 - a


def lex_compare(x: Word, y: Word) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1.

    A proper prefix compares smaller than the longer word.
    """
    _check_same_alphabet(x, y)
    for a, b in zip(x.letters, y.letters):
        if a != b:
            return -1 if a < b else 1
    return (len(x) > len(y)) - (len(x) < len(y))


def rank_phi(w: Word) -> int:
    """Read the phi_gt values of ``w`` as a base-sigma number.

    This is the count of same-length words strictly greater than ``w``.
    """
    if len(w) == 0:
        raise InvalidInputError("rank of the empty word is undefined")
    sigma = w.alphabet.size
    r = 0
    for a in w.letters:
        r = r * sigma + (sigma - 1 - a)
    return r


def reverse_complement(w: Word) -> Word:
    comp = w.alphabet.complement
    if comp is None:
        raise UnsupportedOperationError(f"alphabet {w.alphabet} has no complement involution")
    return Word(tuple(comp[a] for a in reversed(w.letters)), w.alphabet)


def enumerate_words(alphabet: Alphabet, m: int) -> Iterator[Word]:
    """All words of length ``m`` in increasing lexicographic order."""
    if m < 1:
        raise InvalidInputError("m must be at least 1")
    for letters in product(range(alphabet.size), repeat=m):
        yield Word(letters, alphabet)


def word_from_code(alphabet: Alphabet, code: int, m: int) -> Word:
    """Decode the base-sigma integer ``code`` into a length-``m`` word."""
    sigma = alphabet.size
    letters = []
    for _ in range(m):
        code, r = divmod(code, sigma)
        letters.append(r)
    return Word(tuple(reversed(letters)), alphabet)


def word_code(w: Word | Sequence[int], sigma: int | None = None) -> int:
    """Base-sigma integer of a word; increasing in lexicographic order for fixed length."""
    if isinstance(w, Word):
        sigma, letters = w.alphabet.size, w.letters
    else:
        letters = w
    code = 0
    for a in letters:
        code = code * sigma + a
    return code

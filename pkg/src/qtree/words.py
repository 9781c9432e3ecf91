"""Words over a finite alphabet: the vertices of the rooted tree X^*."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Word = tuple  # tuple[int, ...]; the empty tuple is the root

EMPTY: Word = ()

MAX_ALPHABET = 10


@dataclass(frozen=True)
class Alphabet:
    """Letters 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.size}")
        if self.size > MAX_ALPHABET:
            raise ValueError(f"alphabet size must be <= {MAX_ALPHABET} (words render as digit strings)")

    @property
    def letters(self) -> range:
        return range(self.size)

    def check(self, w: Word) -> Word:
        for c in w:
            if not 0 <= c < self.size:
                raise ValueError(f"letter {c} out of range for alphabet of size {self.size}")
        return w


def enumerate_words(alphabet: Alphabet | int, n: int) -> list[Word]:
    """All words of length n in lexicographic order."""
    k = alphabet.size if isinstance(alphabet, Alphabet) else alphabet
    if n < 0:
        raise ValueError("word length must be non-negative")
    return list(itertools.product(range(k), repeat=n))


def words_upto(k: int, n: int) -> list[Word]:
    out = []
    for m in range(n + 1):
        out.extend(enumerate_words(k, m))
    return out


def split_prefix(w: Word, m: int) -> tuple[Word, Word]:
    if not 0 <= m <= len(w):
        raise ValueError(f"cannot split word of length {len(w)} at {m}")
    return w[:m], w[m:]


def common_prefix_length(a: Word, b: Word) -> int:
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return i
    return n


def render_word(w: Word) -> str:
    return "".join(map(str, w)) if w else "e"


def parse_word(text: str, k: int | None = None) -> Word:
    text = text.strip()
    if text == "e":
        return EMPTY
    if not text.isdigit():
        raise ValueError(f"bad word {text!r}")
    w = tuple(int(c) for c in text)
    if k is not None:
        Alphabet(k).check(w)
    return w

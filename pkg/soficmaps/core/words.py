"""Finite words over an arbitrary string alphabet.

A word is a tuple of symbols. Symbols may be multi-character strings, so all
slicing happens on tuples and text forms are produced by ``format_word``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[str, ...]

EMPTY: Word = ()


def as_word(symbols: Iterable[str]) -> Word:
    return tuple(symbols)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse ``text`` into a word.

    Comma or whitespace separated tokens are used when present; otherwise,
    when every symbol is a single character, the text is split per character.
    An empty string is the empty word.
    """
    stripped = text.strip()
    if not stripped:
        return EMPTY
    if "," in stripped or any(ch.isspace() for ch in stripped):
        tokens = [t for t in stripped.replace(",", " ").split() if t]
        return tuple(tokens)
    if all(len(s) == 1 for s in alphabet):
        return tuple(stripped)
    return (stripped,)


def format_word(w: Sequence[str]) -> str:
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return ",".join(w)


def rotate(w: Word, j: int) -> Word:
    if not w:
        return w
    j %= len(w)
    return w[j:] + w[:j]


def primitive_root(w: Word) -> Word:
    """Shortest word whose power is ``w``."""
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


def is_primitive(w: Word) -> bool:
    return bool(w) and primitive_root(w) == w


def least_rotation(w: Word) -> Word:
    return min(rotate(w, j) for j in range(len(w))) if w else w


def rotation_offset(a: Word, b: Word) -> int | None:
    """Smallest j in [1, len(a)] with b == a[j:] + a[:j], or None."""
    if len(a) != len(b) or not a:
        return None
    for j in range(1, len(a) + 1):
        if a[j:] + a[:j] == b:
            return j
    return None


def words_up_to(alphabet: Sequence[str], n: int, *, start: int = 0) -> Iterable[Word]:
    """All words of length start..n in length-lexicographic order."""
    layer: list[Word] = [EMPTY]
    for length in range(n + 1):
        if length >= start:
            yield from layer
        layer = [w + (s,) for w in layer for s in alphabet]

"""Alphabets, words and the scattered-subword relation.

A word over the alphabet ``A_k`` is a tuple of letter indices in ``1..k``;
``()`` is the empty word. Text conversion (``"abacb"`` <-> ``(1, 2, 1, 3, 2)``)
only happens at the boundary, through :func:`parse_word` and :func:`format_word`.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()
MAX_TEXT_LETTERS = 26


class WordError(ValueError):
    """Raised for malformed word text or letters outside the alphabet."""


class UnsupportedAlphabetError(ValueError):
    """Raised when the text format cannot represent the alphabet."""


@dataclass(frozen=True)
class Alphabet:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.k}")

    @property
    def letters(self) -> range:
        return range(1, self.k + 1)

    def __contains__(self, letter: object) -> bool:
        return isinstance(letter, int) and 1 <= letter <= self.k


def _as_k(alphabet: Alphabet | int) -> int:
    return alphabet.k if isinstance(alphabet, Alphabet) else int(alphabet)


def parse_word(text: str, alphabet: Alphabet | int) -> Word:
    """Map ``'a'`` to 1, ``'b'`` to 2, ... and return the letter tuple."""
    k = _as_k(alphabet)
    if k > MAX_TEXT_LETTERS:
        raise UnsupportedAlphabetError(
            f"text words support at most {MAX_TEXT_LETTERS} letters, got k={k}"
        )
    letters = []
    for pos, ch in enumerate(text, start=1):
        idx = ord(ch) - ord("a") + 1
        if not (ch in string.ascii_lowercase and idx <= k):
            raise WordError(
                f"character {ch!r} at position {pos} is not one of the first {k} letters"
            )
        letters.append(idx)
    return tuple(letters)


def format_word(x: Sequence[int]) -> str:
    if any(a > MAX_TEXT_LETTERS for a in x):
        raise UnsupportedAlphabetError("letter index beyond 'z' has no text form")
    return "".join(chr(ord("a") + a - 1) for a in x)


def check_word(x: Sequence[int], alphabet: Alphabet | int) -> Word:
    k = _as_k(alphabet)
    for pos, a in enumerate(x, start=1):
        if not 1 <= a <= k:
            raise WordError(f"letter {a} at position {pos} outside 1..{k}")
    return tuple(x)


def is_subword(u: Sequence[int], x: Sequence[int]) -> bool:
    """True iff ``u`` embeds into ``x`` as a scattered subsequence."""
    it = iter(x)
    # `in` on an iterator consumes up to and including the match: greedy embedding.
    return all(a in it for a in u)


def letter_count(x: Sequence[int], a: int) -> int:
    return sum(1 for b in x if b == a)


def capped_letter_counts(x: Sequence[int], n: int, k: int) -> Tuple[int, ...]:
    counts = [0] * k
    for a in x:
        counts[a - 1] += 1
    return tuple(min(c, n) for c in counts)


def decompose_by_letter(x: Sequence[int], a: int) -> Tuple[int, Tuple[Word, ...]]:
    """Split ``x`` at every occurrence of ``a``.

    Returns ``(p, segments)`` with ``p = |x|_a`` and ``p + 1`` a-free segments
    such that ``x = segments[0] a segments[1] ... a segments[p]``.
    """
    segments = []
    current: list[int] = []
    for b in x:
        if b == a:
            segments.append(tuple(current))
            current = []
        else:
            current.append(b)
    segments.append(tuple(current))
    return len(segments) - 1, tuple(segments)


def join_by_letter(segments: Sequence[Sequence[int]], a: int) -> Word:
    out: list[int] = []
    for i, seg in enumerate(segments):
        if i:
            out.append(a)
        out.extend(seg)
    return tuple(out)


def shortlex_key(x: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    return len(x), tuple(x)


def words_of_length(k: int, length: int) -> Iterator[Word]:
    """All words of the given length, in lexicographic order."""
    return itertools.product(range(1, k + 1), repeat=length)


def words_up_to(k: int, max_length: int) -> Iterator[Word]:
    """All words of length <= ``max_length`` in shortlex order."""
    for length in range(max_length + 1):
        yield from words_of_length(k, length)

"""Rich and poor words, richness, and the rich factorization.

Over ``A_k`` a word is *rich* when every letter occurs in it and *poor*
otherwise. It is ``l``-rich when it splits into ``l`` consecutive rich factors;
by convention "0-rich" means poor, so ``is_l_rich(x, 0, k)`` holds exactly for
poor words. Greedily cutting off the shortest rich prefix gives the rich
factorization ``x = x_1 a_1 ... x_m a_m y`` and ``m`` is the richness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from simcon.words import Word, format_word


@dataclass(frozen=True)
class RichFactorization:
    pairs: Tuple[Tuple[Word, int], ...]
    tail: Word

    @property
    def m(self) -> int:
        return len(self.pairs)

    def word(self) -> Word:
        out: list[int] = []
        for seg, a in self.pairs:
            out.extend(seg)
            out.append(a)
        out.extend(self.tail)
        return tuple(out)

    def render(self) -> str:
        """Text form ``x1·a1|x2·a2|...|y``."""
        parts = [f"{format_word(seg)}·{format_word((a,))}" for seg, a in self.pairs]
        parts.append(format_word(self.tail))
        return "|".join(parts)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "pairs": [[format_word(seg), format_word((a,))] for seg, a in self.pairs],
            "tail": format_word(self.tail),
        }


def is_rich(x: Sequence[int], k: int) -> bool:
    return len(set(x)) == k and all(1 <= a <= k for a in x)


def _shortest_rich_prefix(x: Sequence[int], start: int, k: int) -> int:
    """End (exclusive) of the shortest rich factor starting at ``start``, or -1."""
    seen: set[int] = set()
    for i in range(start, len(x)):
        seen.add(x[i])
        if len(seen) == k:
            return i + 1
    return -1


def rich_factorization(x: Sequence[int], k: int) -> RichFactorization:
    x = tuple(x)
    pairs = []
    start = 0
    while True:
        end = _shortest_rich_prefix(x, start, k)
        if end < 0:
            break
        pairs.append((x[start:end - 1], x[end - 1]))
        start = end
    return RichFactorization(tuple(pairs), x[start:])


def richness(x: Sequence[int], k: int) -> int:
    return rich_factorization(x, k).m


def is_l_rich(x: Sequence[int], ell: int, k: int) -> bool:
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if ell == 0:
        return not is_rich(x, k)
    # greedy shortest-prefix cuts maximize the number of rich factors, and any
    # surplus can be merged into the last factor
    return richness(x, k) >= ell

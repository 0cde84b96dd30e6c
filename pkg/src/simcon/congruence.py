"""Simon's congruence: subword sets, equivalence, keys and minimality.

Two representations of "the subwords of x up to length n" live here:

* :func:`subwords_up_to` builds an explicit :class:`SubwordSet` by a
  breadth-first walk over earliest embeddings. It is the semantic reference.
* :func:`subword_layers` packs the same information into one bitset per length.
  The length-``j`` layer has bit ``idx(v)`` set for every subword ``v`` of
  length ``j``, where ``idx(v) = sum((v[i] - 1) * k**i)`` (little-endian digits).
  With this indexing, appending a letter ``a`` to ``x`` maps layer ``j`` onto
  layer ``j + 1`` by a single left shift of ``(a - 1) * k**j``, which is what
  makes the enumeration engine cheap.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple, Union

from simcon.words import Word, format_word, words_up_to

DEFAULT_MEMBER_BUDGET = 2**24
DEFAULT_ORACLE_BUDGET = 2**20
FINGERPRINT_BYTES = 16

EXACT = "exact"
FINGERPRINT = "fingerprint"
MODES = (EXACT, FINGERPRINT)

SHORT_WORD = "short-word"
EXACT_SET = "exact-set"


class ResourceBudgetError(RuntimeError):
    """A computation would exceed its configured size budget."""


@dataclass(frozen=True)
class SubwordSet:
    cap: int
    members: FrozenSet[Word]

    def __contains__(self, u: object) -> bool:
        return u in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[Word]:
        """Members in shortlex order."""
        return sorted(self.members, key=lambda w: (len(w), w))


@dataclass(frozen=True)
class CongruenceKey:
    cap: int
    kind: str
    payload: Union[Word, Tuple[Word, ...], bytes]


def _alphabet_size(*words: Sequence[int]) -> int:
    return max((max(w) for w in words if w), default=1)


def _subword_levels(x: Sequence[int], n: int, budget: int) -> list[set[Word]]:
    """Subwords of ``x`` grouped by length 0..n (levels past |x| are empty)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = tuple(x)
    letters = sorted(set(x))
    # nxt[i][a]: first position >= i holding letter a (len(x) when absent)
    nxt = [dict.fromkeys(letters, len(x)) for _ in range(len(x) + 1)]
    for i in range(len(x) - 1, -1, -1):
        nxt[i] = dict(nxt[i + 1])
        nxt[i][x[i]] = i
    # each subword maps to the end of its earliest embedding
    frontier: dict[Word, int] = {(): 0}
    levels: list[set[Word]] = [{()}]
    size = 1
    for _ in range(n):
        step: dict[Word, int] = {}
        for u, end in frontier.items():
            for a in letters:
                pos = nxt[end][a]
                if pos < len(x):
                    step[u + (a,)] = pos + 1
        size += len(step)
        if size > budget:
            raise ResourceBudgetError(
                f"subword set exceeds {budget} members; use fingerprint keys instead"
            )
        levels.append(set(step))
        frontier = step
    return levels


def subwords_up_to(
    x: Sequence[int], n: int, budget: int = DEFAULT_MEMBER_BUDGET
) -> SubwordSet:
    """All ``u`` with ``u`` a subword of ``x`` and ``|u| <= n``."""
    members: set[Word] = set()
    for level in _subword_levels(x, n, budget):
        members |= level
    return SubwordSet(n, frozenset(members))


def subword_layers(x: Sequence[int], n: int, k: int) -> Tuple[int, ...]:
    """Bitset layers ``(L_0, ..., L_n)`` of the subwords of ``x``."""
    layers = initial_layers(n)
    for a in x:
        layers = extend_layers(layers, a, k)
    return layers


def initial_layers(n: int) -> Tuple[int, ...]:
    return (1,) + (0,) * n


def extend_layers(layers: Tuple[int, ...], a: int, k: int) -> Tuple[int, ...]:
    """Layers of ``x a`` from the layers of ``x``."""
    shift = a - 1
    out = [1]
    for j in range(len(layers) - 1):
        out.append(layers[j + 1] | (layers[j] << shift))
        shift *= k
    return tuple(out)


def decode_index(idx: int, length: int, k: int) -> Word:
    letters = []
    for _ in range(length):
        idx, d = divmod(idx, k)
        letters.append(d + 1)
    return tuple(letters)


def layer_members(bits: int, length: int, k: int) -> list[Word]:
    """Words of one bitset layer, in lexicographic order."""
    out = []
    idx = 0
    while bits:
        if bits & 1:
            out.append(decode_index(idx, length, k))
        bits >>= 1
        idx += 1
    out.sort()
    return out


def serialize_exact_set(members: Iterable[Word]) -> str:
    """Comma-separated text of the members, in shortlex order."""
    return ",".join(format_word(w) for w in sorted(members, key=lambda w: (len(w), w)))


def fingerprint(serialization: str) -> bytes:
    return hashlib.blake2b(
        serialization.encode("ascii"), digest_size=FINGERPRINT_BYTES
    ).digest()


@lru_cache(maxsize=64)
def _lex_table(k: int, n: int) -> Tuple[Tuple[int, str], ...]:
    """(little-endian index, text) of every length-n word, in lexicographic order."""
    table = []
    for w in words_up_to(k, n):
        if len(w) == n:
            idx = sum((a - 1) * k**i for i, a in enumerate(w))
            table.append((idx, format_word(w)))
    return tuple(table)


def serialize_layer(bits: int, n: int, k: int) -> str:
    """Canonical serialization of a length-n layer, without decoding words."""
    return ",".join(text for idx, text in _lex_table(k, n) if bits >> idx & 1)


def congruence_key(
    x: Sequence[int],
    n: int,
    mode: str = EXACT,
    budget: int = DEFAULT_MEMBER_BUDGET,
) -> CongruenceKey:
    """Canonical token of the ~n class of ``x``.

    Words shorter than ``n`` are alone in their class and keyed by themselves.
    Otherwise every shorter subword extends to one of length exactly ``n``
    inside ``x``, so the length-``n`` subwords determine the class.
    """
    if mode not in MODES:
        raise ValueError(f"unknown key mode {mode!r}")
    x = tuple(x)
    if len(x) < n:
        return CongruenceKey(n, SHORT_WORD, x)
    top = tuple(sorted(_subword_levels(x, n, budget)[n]))
    if mode == FINGERPRINT:
        return CongruenceKey(n, FINGERPRINT, fingerprint(serialize_exact_set(top)))
    return CongruenceKey(n, EXACT_SET, top)


def equivalent(x: Sequence[int], y: Sequence[int], n: int) -> bool:
    """``x ~n y``: same subwords of length at most ``n``."""
    return congruence_key(x, n) == congruence_key(y, n)


def distinguishing_subword(
    x: Sequence[int], y: Sequence[int], n: int
) -> Optional[Word]:
    """A shortest word of length <= n that is a subword of exactly one of
    ``x``, ``y``, or None when ``x ~n y``.

    Among the shortest witnesses, subwords of ``x`` missing from ``y`` are
    preferred; ties go to the lexicographically least.
    """
    for lx, ly in zip(_subword_levels(x, n, DEFAULT_MEMBER_BUDGET),
                      _subword_levels(y, n, DEFAULT_MEMBER_BUDGET)):
        if lx != ly:
            return min(lx - ly) if lx - ly else min(ly - lx)
    return None


def _check_scan_budget(length: int, k: int, budget: int) -> None:
    total = sum(k**j for j in range(length + 1))
    if total > budget:
        raise ResourceBudgetError(
            f"minimality search needs {total} candidates, budget is {budget}"
        )


def minimal_representative(
    x: Sequence[int], n: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> Word:
    """Shortlex-least word ~n-equivalent to ``x``, by exhaustive scan."""
    x = tuple(x)
    if n == 0:
        return ()
    # for n >= 1 equivalent words use the same letters, so k = max(x) suffices
    k = _alphabet_size(x)
    _check_scan_budget(len(x), k, budget)
    target = congruence_key(x, n)
    for y in words_up_to(k, len(x)):
        if congruence_key(y, n) == target:
            return y
    raise AssertionError("unreachable: x is among the scanned words")


def is_minimal(x: Sequence[int], n: int, budget: int = DEFAULT_ORACLE_BUDGET) -> bool:
    x = tuple(x)
    return minimal_representative(x, n, budget) == x

"""Randomized checks of the structural lemmas about ~n.

Each suite draws instances whose premise holds by construction (equivalent
pairs come from a random walk inside a ~n class), then checks the conclusion.
A suite returns a :class:`SuiteResult`; it passes when no counterexample was
found. Everything is driven by a seeded :class:`random.Random`, so a run is
reproducible from ``(seed, samples, max_len)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from simcon.congruence import (
    congruence_key,
    equivalent,
    subword_layers,
    subwords_up_to,
)
from simcon.enumeration import EnumerationConfig, count_classes, brute_force_subwords
from simcon.richness import is_rich, rich_factorization, richness
from simcon.words import (
    Word,
    capped_letter_counts,
    decompose_by_letter,
    format_word,
    letter_count,
)


@dataclass
class SuiteResult:
    name: str
    samples: int
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({len(self.counterexamples)} counterexamples)" if not self.passed else ""
        return f"{status}  {self.name}: {self.samples} samples{extra}"


def random_word(rng: random.Random, k: int, max_len: int, min_len: int = 0) -> Word:
    return tuple(rng.randint(1, k) for _ in range(rng.randint(min_len, max_len)))


def equivalent_partner(
    rng: random.Random, x: Word, n: int, k: int, max_len: int, steps: int = 24
) -> Word:
    """A word ~n-equivalent to ``x`` reached by random single-letter edits."""
    y = x
    target = congruence_key(x, n)
    for _ in range(steps):
        op = rng.randrange(3)
        pos = rng.randint(0, len(y))
        if op == 0 and len(y) < max_len:
            cand = y[:pos] + (rng.randint(1, k),) + y[pos:]
        elif op == 1 and pos < len(y):
            cand = y[:pos] + y[pos + 1:]
        elif pos < len(y):
            cand = y[:pos] + (rng.randint(1, k),) + y[pos + 1:]
        else:
            continue
        if congruence_key(cand, n) == target:
            y = cand
    return y


def _fmt(*words: Word) -> str:
    return " ".join(repr(format_word(w)) for w in words)


def _params(rng: random.Random, max_k: int = 3, max_n: int = 4) -> Tuple[int, int]:
    return rng.randint(1, max_k), rng.randint(1, max_n)


def capped_count_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("capped-count lemma", samples)
    for _ in range(samples):
        k, n = _params(rng)
        x = random_word(rng, k, max_len)
        y = equivalent_partner(rng, x, n, k, max_len)
        if capped_letter_counts(x, n, k) != capped_letter_counts(y, n, k):
            res.counterexamples.append(f"n={n}: {_fmt(x, y)}")
    return res


def segment_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("segment lemma", samples)
    done = 0
    while done < samples:
        k = rng.randint(2, 3)
        n = rng.randint(1, 4)
        x = random_word(rng, k, max_len)
        p = letter_count(x, k)
        if p >= n:
            continue
        y = equivalent_partner(rng, x, n, k, max_len)
        done += 1
        px, xs = decompose_by_letter(x, k)
        py, ys = decompose_by_letter(y, k)
        if px != py or not all(equivalent(a, b, n - p) for a, b in zip(xs, ys)):
            res.counterexamples.append(f"n={n}: {_fmt(x, y)}")
    return res


def sandwich_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("sandwich lemma", samples)
    for _ in range(samples):
        k = rng.randint(1, 3)
        n = rng.randint(0, 3)
        x1 = random_word(rng, k, 6)
        x2 = random_word(rng, k, 6)
        l1, l2 = richness(x1, k), richness(x2, k)
        y = random_word(rng, k, max_len)
        y2 = equivalent_partner(rng, y, n, k, max_len)
        if not equivalent(x1 + y + x2, x1 + y2 + x2, l1 + n + l2):
            res.counterexamples.append(f"n={n} l1={l1} l2={l2}: {_fmt(x1, y, y2, x2)}")
    return res


def factorwise_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("factorwise lemma", samples)
    for _ in range(samples):
        k = rng.randint(1, 3)
        n = rng.randint(0, 3)
        x = random_word(rng, k, max(max_len, 3 * k), min_len=k)
        fac = rich_factorization(x, k)
        pairs = []
        for seg, a in fac.pairs:
            pairs.append((equivalent_partner(rng, seg, n + 1, k, max_len), a))
        tail = equivalent_partner(rng, fac.tail, n, k, max_len)
        if is_rich(tail, k):
            # the primed word must keep a poor tail; ~0 alone does not ensure it
            tail = fac.tail
        x2 = tuple(l for seg, a in pairs for l in seg + (a,)) + tail
        fac2 = rich_factorization(x2, k)
        if fac2.m != fac.m or [a for _, a in fac2.pairs] != [a for _, a in fac.pairs]:
            res.counterexamples.append(f"factorization shape changed: {_fmt(x, x2)}")
        elif not equivalent(x, x2, n + fac.m):
            res.counterexamples.append(f"n={n} m={fac.m}: {_fmt(x, x2)}")
    return res


def refinement_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("refinement chain", samples)
    for i in range(samples):
        k, n = _params(rng)
        x = random_word(rng, k, max_len)
        # alternate premise-satisfying pairs with unrelated pairs
        y = equivalent_partner(rng, x, n + 1, k, max_len) if i % 2 == 0 else random_word(rng, k, max_len)
        if equivalent(x, y, n + 1) and not equivalent(x, y, n):
            res.counterexamples.append(f"n={n}: {_fmt(x, y)}")
    return res


def congruence_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("congruence closure", samples)
    for _ in range(samples):
        k, n = _params(rng)
        x = random_word(rng, k, max_len)
        y = equivalent_partner(rng, x, n, k, max_len)
        u = random_word(rng, k, 4)
        v = random_word(rng, k, 4)
        if not equivalent(u + x + v, u + y + v, n):
            res.counterexamples.append(f"n={n}: {_fmt(u, x, y, v)}")
    return res


def _word_of_richness_at_least(rng, k: int, ell: int) -> Word:
    out: List[int] = []
    for _ in range(ell):
        block = list(range(1, k + 1)) + [rng.randint(1, k) for _ in range(rng.randint(0, 2))]
        rng.shuffle(block)
        out.extend(block)
    return tuple(out)


def saturation_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("richness saturation", samples)
    for _ in range(samples):
        k = rng.randint(1, 3)
        n = rng.randint(0, 3)
        x = _word_of_richness_at_least(rng, k, n + rng.randint(0, 1))
        y = _word_of_richness_at_least(rng, k, n + rng.randint(0, 1))
        if richness(x, k) >= n and richness(y, k) >= n and not equivalent(x, y, n):
            res.counterexamples.append(f"n={n}: {_fmt(x, y)}")
    return res


def key_oracle_suite(rng, samples, max_len) -> SuiteResult:
    """Compressed keys, bitset layers and brute-force subword sets agree."""
    res = SuiteResult("key soundness oracle", samples)
    for i in range(samples):
        k, n = _params(rng)
        x = random_word(rng, k, max_len)
        y = equivalent_partner(rng, x, n, k, max_len) if i % 2 == 0 else random_word(rng, k, max_len)
        brute = brute_force_subwords(x, n) == brute_force_subwords(y, n)
        full = subwords_up_to(x, n) == subwords_up_to(y, n)
        keys = congruence_key(x, n) == congruence_key(y, n)
        bits = subword_layers(x, n, k)[n] == subword_layers(y, n, k)[n] and (
            (len(x) >= n) == (len(y) >= n) and (len(x) >= n or x == y))
        if not brute == full == keys == bits:
            res.counterexamples.append(f"n={n}: {_fmt(x, y)}")
    return res


def trivial_suite(rng, samples, max_len) -> SuiteResult:
    res = SuiteResult("~0 trivial and short-word rigidity", samples)
    for _ in range(samples):
        k, n = _params(rng)
        x = random_word(rng, k, max_len)
        y = random_word(rng, k, max_len)
        if not equivalent(x, y, 0):
            res.counterexamples.append(f"n=0: {_fmt(x, y)}")
        xs, ys = x[:n], y[:n]
        if equivalent(xs, ys, n) != (xs == ys):
            res.counterexamples.append(f"short n={n}: {_fmt(xs, ys)}")
    return res


def mode_agreement_suite(rng, samples, max_len) -> SuiteResult:
    """Exact and fingerprint engines agree on small instances (not sampled)."""
    cells = [(k, n) for k in range(1, 4) for n in range(0, 4) if k**n <= 27]
    res = SuiteResult("mode agreement", len(cells))
    for k, n in cells:
        exact = count_classes(EnumerationConfig(k, n))
        fp = count_classes(EnumerationConfig(k, n, mode="fingerprint", cross_check=True))
        if (exact.total_classes, exact.per_length) != (fp.total_classes, fp.per_length):
            res.counterexamples.append(f"k={k} n={n}")
    return res


SUITES: Dict[str, Callable[[random.Random, int, int], SuiteResult]] = {
    "capped-count": capped_count_suite,
    "segment": segment_suite,
    "sandwich": sandwich_suite,
    "factorwise": factorwise_suite,
    "refinement": refinement_suite,
    "congruence": congruence_suite,
    "saturation": saturation_suite,
    "key-oracle": key_oracle_suite,
    "trivial": trivial_suite,
    "mode-agreement": mode_agreement_suite,
}


def run_suites(
    seed: int = 0,
    samples: int = 1000,
    max_len: int = 10,
    names: Optional[List[str]] = None,
) -> List[SuiteResult]:
    results = []
    for name in names or list(SUITES):
        # one generator per suite, so suites are reproducible independently
        rng = random.Random(f"{seed}:{name}")
        results.append(SUITES[name](rng, samples, max_len))
    return results

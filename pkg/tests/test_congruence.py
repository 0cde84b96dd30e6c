import hashlib
import itertools

import pytest
from hypothesis import assume, given, strategies as st

from simcon.congruence import (
    EXACT_SET,
    FINGERPRINT,
    SHORT_WORD,
    ResourceBudgetError,
    congruence_key,
    distinguishing_subword,
    equivalent,
    is_minimal,
    layer_members,
    minimal_representative,
    serialize_exact_set,
    serialize_layer,
    subword_layers,
    subwords_up_to,
)
from simcon.enumeration import brute_force_subwords
from simcon.words import capped_letter_counts, decompose_by_letter, is_subword, parse_word

words2 = st.lists(st.integers(1, 2), max_size=9).map(tuple)
words3 = st.lists(st.integers(1, 3), max_size=8).map(tuple)
caps = st.integers(0, 4)


def w(text):
    return parse_word(text, 3)


def ws(*texts):
    return {w(t) for t in texts}


def brute_minimal(x, n, k):
    target = brute_force_subwords(x, n)
    for length in range(len(x) + 1):
        for y in itertools.product(range(1, k + 1), repeat=length):
            if brute_force_subwords(y, n) == target:
                return y


def test_subwords_worked_example():
    s = subwords_up_to(w("abacb"), 2)
    assert s.members == ws("", "a", "b", "c", "aa", "ab", "ac", "ba", "bb", "bc", "cb")
    assert subwords_up_to(w("baaacbb"), 2) == s


def test_subwords_small():
    assert subwords_up_to((), 3).members == {()}
    assert subwords_up_to(w("ab"), 2).members == ws("", "a", "b", "ab")
    assert subwords_up_to(w("ab"), 2).sorted() == [(), (1,), (2,), (1, 2)]


def test_subwords_budget():
    with pytest.raises(ResourceBudgetError):
        subwords_up_to(w("abcabcabc"), 4, budget=20)


def test_equivalent_worked_example():
    x, y = w("abacb"), w("baaacbb")
    assert equivalent(x, y, 2)
    assert not equivalent(x, y, 3)
    assert equivalent(x, x, 5)


def test_key_examples():
    assert congruence_key(w("ab"), 3).kind == SHORT_WORD
    assert congruence_key(w("ab"), 3).payload == w("ab")
    key = congruence_key(w("abacb"), 2)
    assert key.kind == EXACT_SET
    assert key.payload == tuple(w(t) for t in ["aa", "ab", "ac", "ba", "bb", "bc", "cb"])
    assert key == congruence_key(w("baaacbb"), 2)


def test_fingerprint_is_digest_of_serialization():
    key = congruence_key(w("abacb"), 2, mode="fingerprint")
    assert key.kind == FINGERPRINT
    text = b"aa,ab,ac,ba,bb,bc,cb"
    assert key.payload == hashlib.blake2b(text, digest_size=16).digest()
    assert serialize_exact_set(congruence_key(w("abacb"), 2).payload) == text.decode()


def test_is_minimal_examples():
    assert is_minimal(w("ab"), 1)
    assert not is_minimal(w("ba"), 1)
    assert is_minimal((), 0) and is_minimal((), 3)


def test_minimal_representative_examples():
    assert minimal_representative(w("ba"), 1) == w("ab")
    assert minimal_representative(w("aaa"), 2) == w("aa")
    assert minimal_representative(w("abab"), 2) == w("abab")
    assert minimal_representative(w("cab"), 0) == ()


def test_minimal_budget():
    with pytest.raises(ResourceBudgetError):
        minimal_representative(w("abcabcabcabc"), 2, budget=1000)


def test_distinguishing_subword():
    assert distinguishing_subword(w("abacb"), w("baaacbb"), 3) == w("aba")
    assert distinguishing_subword(w("baaacbb"), w("abacb"), 3) == w("aaa")
    assert distinguishing_subword(w("abacb"), w("baaacbb"), 2) is None
    assert distinguishing_subword(w("ab"), w("ba"), 2) == w("ab")


@given(words3, caps)
def test_subword_set_shape(x, n):
    s = subwords_up_to(x, n)
    assert () in s
    assert all(len(u) <= n for u in s.members)
    for u in s.members:
        for i in range(len(u)):
            assert u[:i] + u[i + 1:] in s
    assert s.members == brute_force_subwords(x, n)
    assert all(is_subword(u, x) for u in s.members)


@given(words3, caps)
def test_layers_match_brute_force(x, n):
    layers = subword_layers(x, n, 3)
    brute = brute_force_subwords(x, n)
    for j, bits in enumerate(layers):
        assert set(layer_members(bits, j, 3)) == {u for u in brute if len(u) == j}


@given(words3, caps)
def test_layer_serialization_matches_key(x, n):
    assume(len(x) >= n)
    top = subword_layers(x, n, 3)[n]
    assert serialize_layer(top, n, 3) == serialize_exact_set(congruence_key(x, n).payload)


@given(words2, words2, caps)
def test_key_soundness(x, y, n):
    same_keys = congruence_key(x, n) == congruence_key(y, n)
    assert same_keys == (brute_force_subwords(x, n) == brute_force_subwords(y, n))
    assert same_keys == (subwords_up_to(x, n) == subwords_up_to(y, n))
    fp = congruence_key(x, n, "fingerprint") == congruence_key(y, n, "fingerprint")
    assert fp == same_keys


@given(words2, words2, caps)
def test_refinement_chain(x, y, n):
    if equivalent(x, y, n + 1):
        assert equivalent(x, y, n)


@given(words2, words2, words2, words2, caps)
def test_congruence(x, y, u, v, n):
    if equivalent(x, y, n):
        assert equivalent(u + x + v, u + y + v, n)


@given(words3, words3)
def test_zero_is_trivial(x, y):
    assert equivalent(x, y, 0)


@given(words3, words3, st.integers(1, 4))
def test_short_words_rigid(x, y, n):
    x, y = x[:n], y[:n]
    assert equivalent(x, y, n) == (x == y)


@given(words2, words2, caps)
def test_capped_counts_necessary(x, y, n):
    if equivalent(x, y, n):
        assert capped_letter_counts(x, n, 2) == capped_letter_counts(y, n, 2)


@given(words3, words3, st.integers(1, 4))
def test_segment_lemma(x, y, n):
    p, xs = decompose_by_letter(x, 3)
    if p < n and equivalent(x, y, n):
        q, ys = decompose_by_letter(y, 3)
        assert q == p
        assert all(equivalent(a, b, n - p) for a, b in zip(xs, ys))


@given(words2, words2, caps)
def test_distinguishing_subword_is_shortest(x, y, n):
    u = distinguishing_subword(x, y, n)
    if u is None:
        assert equivalent(x, y, n)
        return
    assert len(u) <= n
    assert is_subword(u, x) != is_subword(u, y)
    assert equivalent(x, y, len(u) - 1)


@pytest.mark.parametrize("text, n", [
    ("ba", 1), ("aaa", 2), ("abba", 2), ("bab", 2), ("abab", 1), ("ccab", 1),
    ("baab", 2), ("aabb", 3), ("abcba", 2), ("bbbb", 2),
])
def test_minimal_representative_matches_brute_force(text, n):
    x = w(text)
    k = max(x)
    rep = minimal_representative(x, n)
    assert rep == brute_minimal(x, n, k)
    assert equivalent(rep, x, n)
    assert minimal_representative(rep, n) == rep

import itertools

import pytest
from hypothesis import given, strategies as st

from simcon.words import (
    Alphabet,
    UnsupportedAlphabetError,
    WordError,
    capped_letter_counts,
    decompose_by_letter,
    format_word,
    is_subword,
    join_by_letter,
    letter_count,
    parse_word,
    words_up_to,
)

words3 = st.lists(st.integers(1, 3), max_size=9).map(tuple)


def brute_is_subword(u, x):
    return any(
        tuple(x[i] for i in idx) == tuple(u)
        for idx in itertools.combinations(range(len(x)), len(u))
    )


def test_parse_word():
    assert parse_word("abacb", 3) == (1, 2, 1, 3, 2)
    assert parse_word("", Alphabet(2)) == ()
    with pytest.raises(WordError, match="position 3"):
        parse_word("abc", 2)
    with pytest.raises(UnsupportedAlphabetError):
        parse_word("a", 27)
    with pytest.raises(WordError):
        parse_word("aB", 3)


def test_format_round_trip():
    assert format_word(parse_word("baaacbb", 3)) == "baaacbb"
    assert format_word(()) == ""


def test_alphabet():
    assert list(Alphabet(3).letters) == [1, 2, 3]
    assert 3 in Alphabet(3) and 4 not in Alphabet(3)
    with pytest.raises(ValueError):
        Alphabet(0)


@pytest.mark.parametrize("u, x, expected", [
    ("aba", "abacb", True),
    ("aba", "baaacbb", False),
    ("", "abc", True),
    ("", "", True),
    ("a", "", False),
    ("cb", "abacb", True),
    ("bc", "cb", False),
])
def test_is_subword(u, x, expected):
    assert is_subword(parse_word(u, 3), parse_word(x, 3)) is expected


def test_letter_count():
    assert letter_count(parse_word("abacb", 3), 1) == 2
    assert letter_count((), 1) == 0
    assert letter_count(parse_word("baaacbb", 3), 2) == 3


def test_capped_letter_counts():
    assert capped_letter_counts(parse_word("abacb", 3), 2, 3) == (2, 2, 1)
    assert capped_letter_counts((1, 1, 1, 1), 2, 1) == (2,)
    assert capped_letter_counts((), 5, 2) == (0, 0)


def test_decompose_by_letter():
    assert decompose_by_letter(parse_word("abacb", 3), 3) == (1, ((1, 2, 1), (2,)))
    assert decompose_by_letter((1, 1, 1), 2) == (0, ((1, 1, 1),))
    assert decompose_by_letter((3, 3), 3) == (2, ((), (), ()))


def test_words_up_to_is_shortlex():
    ws = list(words_up_to(2, 3))
    assert len(ws) == 15
    assert ws == sorted(ws, key=lambda w: (len(w), w))


@given(words3, words3)
def test_is_subword_matches_brute_force(u, x):
    assert is_subword(u, x) == brute_is_subword(u, x)


@given(words3)
def test_subword_reflexive(x):
    assert is_subword(x, x)


@given(words3, words3)
def test_subword_antisymmetric(u, x):
    if is_subword(u, x) and is_subword(x, u):
        assert u == x


@given(words3, words3, words3)
def test_subword_transitive(u, v, x):
    if is_subword(u, v) and is_subword(v, x):
        assert is_subword(u, x)


@given(words3, words3, words3, words3)
def test_precongruence(u, v, x, y):
    if is_subword(u, x) and is_subword(v, y):
        assert is_subword(u + v, x + y)


@given(words3, st.integers(1, 3))
def test_decompose_round_trip(x, a):
    p, segments = decompose_by_letter(x, a)
    assert p == letter_count(x, a)
    assert len(segments) == p + 1
    assert all(a not in seg for seg in segments)
    assert join_by_letter(segments, a) == x


@given(words3, words3, st.integers(1, 3))
def test_letter_count_additive(x, y, a):
    assert letter_count(x + y, a) == letter_count(x, a) + letter_count(y, a)

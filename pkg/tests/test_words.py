from __future__ import annotations

from hypothesis import given, strategies as st

from curvecomplex import words as W
from curvecomplex.geometry import _mismatch

letters = st.sampled_from([1, -1, 2, -2, 3, -3])
words = st.lists(letters, max_size=40).map(tuple)


@given(words)
def test_min_rotation_is_least(w):
    assert W.min_rotation(w) == min(W.rotations(w), key=W.word_key)


@given(words)
def test_canonical_is_class_invariant(w):
    c = W.cyclic_reduce(w)
    if c:
        k = len(c) // 2
        assert W.canonical(c[k:] + c[:k]) == W.canonical(c) == W.canonical(W.inverse(c))


@given(words, words, st.integers(0, 45))
def test_mismatch_finds_first_difference(x, y, start):
    n = min(len(x), len(y))
    got = _mismatch(x, y, min(start, n), n)
    want = next((i for i in range(min(start, n), n) if x[i] != y[i]), n)
    assert got == want


def test_string_round_trip():
    assert W.to_string(W.from_string("abCdB")) == "abCdB"
    assert W.reduce(W.from_string("abBA")) == ()
    assert W.cyclic_reduce(W.from_string("abcA")) == W.from_string("bc")

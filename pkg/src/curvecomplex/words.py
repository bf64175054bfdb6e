"""Reduced words in a free group.

Generators are the integers ``1..r``; the inverse of ``k`` is ``-k``.  A word is
a tuple of non-zero integers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    r = reduce(w)
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return r[i : j + 1]


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))] or [w]


def _letter_key(x: int) -> tuple[int, int]:
    # a < A < b < B < ...
    return (abs(x), 0 if x > 0 else 1)


def word_key(w: Word) -> tuple:
    return tuple(_letter_key(x) for x in w)


def _least_rotation(keys: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(keys)
    s = list(keys) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and s[j] != s[k]:
            if s[j] < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def min_rotation(w: Word) -> Word:
    if len(w) < 2:
        return tuple(w)
    k = _least_rotation([2 * abs(x) + (x < 0) for x in w])
    return tuple(w[k:]) + tuple(w[:k])


def oriented_canonical(w: Iterable[int]) -> Word:
    """Canonical representative of the conjugacy class of ``w``."""
    return min_rotation(cyclic_reduce(w))


def canonical(w: Iterable[int]) -> Word:
    """Canonical representative of the unoriented class ``{w, w^-1}`` up to conjugacy."""
    c = cyclic_reduce(w)
    return min(min_rotation(c), min_rotation(inverse(c)), key=word_key)


def is_proper_power(w: Word) -> bool:
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w[:d] * (n // d) == w:
            return True
    return False


def power(w: Word, n: int) -> Word:
    if n < 0:
        return inverse(w) * (-n)
    return tuple(w) * n


_ALPHA = "abcdefghijklmnopqrstuvwxyz"


def to_string(w: Word) -> str:
    return "".join(_ALPHA[abs(x) - 1] if x > 0 else _ALPHA[abs(x) - 1].upper() for x in w)


def from_string(s: str) -> Word:
    out = []
    for ch in s:
        k = _ALPHA.index(ch.lower()) + 1
        out.append(k if ch.islower() else -k)
    return tuple(out)

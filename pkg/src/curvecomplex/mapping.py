"""Mapping classes as words in generators acting on curve words.

Generators:

* ``("braid", i, e)``: Artin half-twist swapping punctures ``i`` and ``i+1`` of a
  planar surface (``1 <= i <= n-1``), acting on the free group.
* ``("twist", c, e)``: Dehn twist power along a simple closed curve word ``c``.
* ``("halftwist", c, e)``: half-twist power along a pants curve ``c`` of a
  planar surface.

A word is applied left to right: ``MappingClass(s, (g1, g2))`` is ``g2 o g1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import heapq

from .errors import IncompatibleTriangulation, NotPantsCurve
from .geometry import twist_word
from .surface import Surface
from . import words as W

Generator = tuple


def _braid_images(n: int, i: int, e: int) -> dict[int, W.Word]:
    r = n - 1
    img = {k: (k,) for k in range(1, r + 1)}
    if i < r:
        if e > 0:
            img[i] = (i, i + 1, -i)
            img[i + 1] = (i,)
        else:
            img[i] = (i + 1,)
            img[i + 1] = (-(i + 1), i, i + 1)
    elif i == r:
        # the last generator involves the puncture with loop (1 2 ... r)^-1
        xn = W.inverse(tuple(range(1, r + 1)))
        if e > 0:
            img[r] = W.reduce((r,) + xn + (-r,))
        else:
            img[r] = xn
    else:
        raise ValueError(f"braid generator {i} out of range for {n} punctures")
    return img


def apply_automorphism(img: dict[int, W.Word], w: W.Word) -> W.Word:
    out: list[int] = []
    for x in w:
        out.extend(img[x] if x > 0 else W.inverse(img[-x]))
    return W.cyclic_reduce(out)


def apply_braid(n: int, i: int, e: int, w: W.Word) -> W.Word:
    img = _braid_images(n, i, 1 if e > 0 else -1)
    for _ in range(abs(e)):
        w = apply_automorphism(img, w)
    return w


def round_curve(first: int, last: int) -> W.Word:
    """Curve enclosing the consecutive punctures ``first..last`` (``last < n``)."""
    return tuple(range(first, last + 1))


@lru_cache(maxsize=200_000)
def _standardize(n: int, c: W.Word, pants: bool = False) -> tuple[tuple[Generator, ...], W.Word]:
    """Braid word ``b`` and a round curve ``r`` with ``b`` applied to ``c`` giving ``r``.

    Best-first search on word length over the Artin generators.
    """
    if pants:
        rounds = {W.canonical(round_curve(f, f + 1)) for f in range(1, n - 1)}
        rounds.add(W.canonical(round_curve(1, n - 2)))
    else:
        rounds = {W.canonical(round_curve(f, l)) for f in range(1, n) for l in range(f + 1, n)}
    gens = [(i, e) for i in range(1, n) for e in (1, -1)]
    start = W.canonical(c)
    heap = [(len(start), W.word_key(start), start)]
    parent: dict[W.Word, tuple] = {start: None}
    while heap:
        _, _, cur = heapq.heappop(heap)
        if cur in rounds:
            path = []
            while parent[cur] is not None:
                prev, g = parent[cur]
                path.append(g)
                cur_ = prev
                cur = cur_
            return tuple(reversed(path)), W.canonical(_end(n, start, path))
        for i, e in gens:
            v = W.canonical(apply_braid(n, i, e, cur))
            if v not in parent:
                parent[v] = (cur, ("braid", i, e))
                heapq.heappush(heap, (len(v), W.word_key(v), v))
        if len(parent) > 200_000:
            break
    raise RuntimeError(f"could not standardize {W.to_string(start)}")


def _end(n: int, start: W.Word, path: list) -> W.Word:
    w = start
    for g in reversed(path):
        w = apply_braid(n, g[1], g[2], w)
    return w


def standardize(n: int, c: W.Word, pants: bool = False) -> tuple[tuple[Generator, ...], W.Word]:
    return _standardize(n, W.canonical(c), pants)


def invert_generators(gens) -> tuple[Generator, ...]:
    return tuple((g[0], g[1], -g[2]) for g in reversed(gens))


def is_pants_curve(surface: Surface, c: W.Word) -> bool:
    if not surface.is_planar:
        return False
    n = surface.boundary_count
    _, r = standardize(n, c)
    k = len(r)
    return k == 2 or k == n - 2


@dataclass(frozen=True)
class MappingClass:
    surface: Surface
    word: tuple[Generator, ...] = ()

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        """``f @ g`` applies ``g`` first."""
        if self.surface != other.surface:
            raise IncompatibleTriangulation("mapping classes live on different surfaces")
        return MappingClass(self.surface, other.word + self.word)

    def inverse(self) -> "MappingClass":
        return MappingClass(self.surface, invert_generators(self.word))

    def __pow__(self, k: int) -> "MappingClass":
        base = self if k >= 0 else self.inverse()
        return MappingClass(self.surface, base.word * abs(k))

    def act(self, w: W.Word) -> W.Word:
        """Image of an oriented curve word."""
        for g in self.word:
            w = apply_generator(self.surface, g, w)
        return w


def apply_generator(surface: Surface, g: Generator, w: W.Word) -> W.Word:
    kind = g[0]
    if kind == "braid":
        return apply_braid(surface.boundary_count, g[1], g[2], w)
    if kind == "twist":
        return twist_word(w, g[1], g[2], surface.ribbon)
    if kind == "halftwist":
        return _halftwist(surface, g[1], g[2], w)
    raise ValueError(f"unknown generator {g!r}")


def _halftwist(surface: Surface, c: W.Word, e: int, w: W.Word) -> W.Word:
    if not is_pants_curve(surface, c):
        raise NotPantsCurve(W.to_string(c))
    n = surface.boundary_count
    to_std, r = standardize(n, c, pants=True)
    gen = ("braid", r[0], 1) if len(r) == 2 else ("braid", n - 1, 1)
    for g in to_std:
        w = apply_generator(surface, g, w)
    w = apply_braid(n, gen[1], e, w)
    for g in invert_generators(to_std):
        w = apply_generator(surface, g, w)
    return w


def twist(surface: Surface, c: W.Word, n: int = 1) -> MappingClass:
    return MappingClass(surface, (("twist", W.cyclic_reduce(c), n),))


def halftwist(surface: Surface, c: W.Word, n: int = 1) -> MappingClass:
    return MappingClass(surface, (("halftwist", W.cyclic_reduce(c), n),))


def braid(surface: Surface, i: int, e: int = 1) -> MappingClass:
    return MappingClass(surface, (("braid", i, e),))

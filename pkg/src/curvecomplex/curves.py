"""Curves on a surface: validation, intersection numbers, serialization."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import IncompatibleTriangulation, InvalidCurve, NotSimple, NullHomotopic, Peripheral
from .geometry import (
    intersection as _word_intersection,
    intersection_capped as _word_intersection_capped,
    intersects as _word_intersects,
    self_intersection,
)
from .surface import Surface
from .triangulation import Triangulation, reference_triangulation
from . import words as W


@dataclass(frozen=True, order=True)
class Curve:
    """Isotopy class of an essential, non-peripheral simple closed curve.

    Stored as the canonical cyclic word of the unoriented free homotopy class;
    ``coords`` are its normal coordinates on the reference triangulation.
    """

    surface: Surface
    word: W.Word

    @classmethod
    def from_word(cls, surface: Surface, w, check: bool = True) -> "Curve":
        c = W.canonical(w)
        if check:
            if any(abs(x) > surface.rank for x in c):
                raise InvalidCurve(f"{W.to_string(c)} uses a letter beyond the {surface.rank} loops of {surface}")
            if not c:
                raise NullHomotopic("empty word")
            if c in surface.ribbon.peripheral_classes:
                raise Peripheral(W.to_string(c))
            if W.is_proper_power(c) or self_intersection(c, surface.ribbon):
                raise NotSimple(W.to_string(c))
        return cls(surface, c)

    @classmethod
    def parse(cls, surface: Surface, s: str) -> "Curve":
        return cls.from_word(surface, W.from_string(s))

    @cached_property
    def coords(self) -> tuple[int, ...]:
        return reference_triangulation(self.surface).coordinates(self.word)

    @cached_property
    def homology(self) -> tuple[int, ...]:
        """Exponent sum of each generator (defined up to a global sign)."""
        sums = [0] * self.surface.rank
        for x in self.word:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sums)

    @property
    def weight(self) -> int:
        return sum(self.coords)

    def __str__(self) -> str:
        return W.to_string(self.word)

    def __repr__(self) -> str:
        return f"Curve({self.surface}, {W.to_string(self.word)!r})"

    def to_json(self) -> dict:
        T = reference_triangulation(self.surface)
        return {"fingerprint": T.fingerprint, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, surface: Surface, d: dict) -> "Curve":
        T = reference_triangulation(surface)
        if d.get("fingerprint", T.fingerprint) != T.fingerprint:
            raise IncompatibleTriangulation("fingerprint mismatch")
        return validate_curve(d["coords"], T)


def validate_curve(coords, T: Triangulation) -> Curve:
    """Curve with the given normal coordinates, or the first violated condition."""
    coords = tuple(int(x) for x in coords)
    w = T.word_of(coords)
    c = Curve(T.surface, W.canonical(w))
    assert c.coords == coords
    return c


@lru_cache(maxsize=1_000_000)
def _cached_i(surface: Surface, a: W.Word, b: W.Word) -> int:
    return _word_intersection(a, b, surface.ribbon)


def intersection_number(a: Curve, b: Curve) -> int:
    if a.surface != b.surface:
        raise IncompatibleTriangulation("curves on different surfaces")
    x, y = (a.word, b.word) if W.word_key(a.word) <= W.word_key(b.word) else (b.word, a.word)
    return _cached_i(a.surface, x, y)


def intersection_at_most(a: Curve, b: Curve, cap: int) -> int:
    """min(i(a, b), cap), with an early exit."""
    if a.surface != b.surface:
        raise IncompatibleTriangulation("curves on different surfaces")
    return _word_intersection_capped(a.word, b.word, a.surface.ribbon, cap)


def disjoint(a: Curve, b: Curve) -> bool:
    if a.surface != b.surface:
        raise IncompatibleTriangulation("curves on different surfaces")
    if _homologically_crossing(a, b):
        return False
    return not _word_intersects(a.word, b.word, a.surface.ribbon)


def _homologically_crossing(a: Curve, b: Curve) -> bool:
    """Cheap certificate that ``a`` and ``b`` must intersect.

    Planar: disjoint curves cut the punctures into nested or complementary
    sets.  Otherwise: disjoint curves have zero algebraic intersection.
    """
    ha, hb = a.homology, b.homology
    if a.surface.is_planar:
        A = frozenset(k for k, x in enumerate(ha) if x)
        B = frozenset(k for k, x in enumerate(hb) if x)
        return not (A <= B or B <= A or not (A & B))
    form = 0
    for k in range(a.surface.genus):
        x, y = 2 * k, 2 * k + 1
        form += ha[x] * hb[y] - ha[y] * hb[x]
    return form != 0


def apply(f, a: Curve) -> Curve:
    """Image of ``a`` under the mapping class ``f``."""
    if f.surface != a.surface:
        raise IncompatibleTriangulation("mapping class and curve on different surfaces")
    return Curve(a.surface, W.canonical(f.act(a.word)))


def compile_twist(c: Curve, n: int = 1):
    from .mapping import twist

    return twist(c.surface, c.word, n)


def is_separating(c: Curve) -> bool:
    """Separating iff the class is a combination of peripheral loops, i.e. the
    exponent sum of every handle generator vanishes."""
    handle = 2 * c.surface.genus
    sums = [0] * (handle + 1)
    for x in c.word:
        if abs(x) <= handle:
            sums[abs(x)] += 1 if x > 0 else -1
    return not any(sums)

"""Exact backend for the complexity-one surfaces: slopes and the Farey graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .errors import WrongComplexity
from .surface import Surface


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if q < 0 or (q == 0 and p != 1):
            raise ValueError(f"non-canonical slope {p}/{q}; use Slope.of")
        if gcd(abs(p), q) != 1:
            raise ValueError(f"{p}/{q} is not reduced")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, s: str) -> "Slope":
        if s in ("inf", "oo", "∞"):
            return INF
        p, _, q = s.partition("/")
        return cls.of(int(p), int(q or 1))

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def det(self, other: "Slope") -> int:
        return self.p * other.q - self.q * other.p

    def transform(self, m: tuple[int, int, int, int]) -> "Slope":
        a, b, c, d = m
        return Slope.of(a * self.p + b * self.q, c * self.p + d * self.q)

    @property
    def cf_length(self) -> int:
        """Number of partial quotients of the continued fraction (0 for infinity)."""
        if self.q == 0:
            return 0
        p, q, n = self.p, self.q, 0
        while q:
            p, q = q, p % q
            n += 1
        return n


INF = Slope(1, 0)


def _require_complexity_one(surface: Surface | None) -> None:
    if surface is not None and surface.complexity != 1:
        raise WrongComplexity(f"{surface} has complexity {surface.complexity}, not 1")


def slope_intersection(x: Slope, y: Slope, surface: Surface | None = None) -> int:
    """Intersection number of the curves with these slopes."""
    factor = 2 if surface is not None and surface.is_planar else 1
    return factor * abs(x.det(y))


def farey_adjacent(x: Slope, y: Slope, surface: Surface | None = None) -> bool:
    _require_complexity_one(surface)
    return abs(x.det(y)) == 1


def _to_infinity(x: Slope) -> tuple[int, int, int, int]:
    """An SL(2,Z) matrix sending ``x`` to 1/0."""
    p, q = x.p, x.q
    # find r, s with p*s - q*r = 1
    g, s, t = _egcd(p, q)  # p*s + q*t = 1
    r = -t
    return (s, -r, -q, p)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def ladder(target: Slope) -> list[Slope]:
    """Vertices of the Farey triangles crossed by the vertical line to ``target``."""
    if target.q == 0:
        return [INF]
    u, v = target.p, target.q
    fl = u // v
    lo, hi = (fl, 1), (fl + 1, 1)
    out = [INF, Slope(*lo), Slope(*hi)]
    while True:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        if lo[0] * v == u * lo[1] or hi[0] * v == u * hi[1]:
            break
        out.append(Slope(*m))
        if m[0] * v == u * m[1]:
            break
        if Fraction(*m) < Fraction(u, v):
            lo = m
        else:
            hi = m
    return out


@lru_cache(maxsize=100_000)
def slope_distance(x: Slope, y: Slope, surface: Surface | None = None) -> int:
    """Farey-graph distance; exact.

    After moving ``x`` to infinity every geodesic to ``y`` stays among the
    vertices of the triangles crossed by the vertical line to ``y``, so BFS on
    that finite ladder is exact.
    """
    _require_complexity_one(surface)
    if x == y:
        return 0
    y2 = y.transform(_to_infinity(x))
    verts = ladder(y2)
    adj = {v: [w for w in verts if abs(v.det(w)) == 1] for v in verts}
    dist = {INF: 0}
    dq = deque([INF])
    while dq:
        v = dq.popleft()
        if v == y2:
            return dist[v]
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                dq.append(w)
    raise AssertionError("ladder is connected")


def farey_bfs_distance(x: Slope, y: Slope, bound: int) -> int | None:
    """Plain BFS over all slopes with ``|p|, q <= bound``; ``None`` if unreachable."""
    verts = [INF] + [
        Slope(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1) if gcd(abs(p), q) == 1
    ]
    if x not in verts or y not in verts:
        return None
    dist = {x: 0}
    dq = deque([x])
    while dq:
        v = dq.popleft()
        if v == y:
            return dist[v]
        for w in verts:
            if w not in dist and abs(v.det(w)) == 1:
                dist[w] = dist[v] + 1
                dq.append(w)
    return None


def slopes_up_to(bound: int) -> list[Slope]:
    return [INF] + [
        Slope(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1) if gcd(abs(p), q) == 1
    ]


# --- dictionary between slopes and kernel curves ------------------------------

@dataclass(frozen=True)
class _Frame:
    """Reference curves for 0/1, 1/0, 1/1 and the slope matrices of the
    (half-)twists about 0/1 and 1/0."""

    surface: Surface
    alpha: object
    beta: object
    gamma: object
    eps: int  # twist about 1/0 sends p/q to (p + eps*q)/q

    @property
    def factor(self) -> int:
        return 2 if self.surface.is_planar else 1

    def generator(self, which: str, k: int):
        from . import mapping

        core = self.alpha if which == "A" else self.beta
        make = mapping.halftwist if self.surface.is_planar else mapping.twist
        return make(self.surface, core.word, k)


@lru_cache(maxsize=None)
def _frame(surface: Surface) -> _Frame:
    from .curves import Curve, apply

    _require_complexity_one(surface)
    surface.require_kernel()
    if surface.is_planar:
        alpha, beta = Curve.parse(surface, "ab"), Curve.parse(surface, "bc")
    else:
        alpha, beta = Curve.parse(surface, "a"), Curve.parse(surface, "b")
    tmp = _Frame(surface, alpha, beta, alpha, 1)
    # the twist about 0/1 fixes 0/1 and sends 1/0 to a neighbour of both: call it 1/1
    gamma = apply(tmp.generator("A", 1), beta)
    image = apply(tmp.generator("B", 1), alpha)
    eps = 1 if image == gamma else -1
    return _Frame(surface, alpha, beta, gamma, eps)


def _slope_step(x: Slope, which: str, k: int, eps: int) -> Slope:
    if which == "A":
        return x.transform((1, 0, k, 1))
    return x.transform((1, eps * k, 0, 1))


def curve_of_slope(surface: Surface, x: Slope):
    """Kernel curve carrying slope ``x`` on a complexity-one surface."""
    from .curves import apply

    fr = _frame(surface)
    steps: list[tuple[str, int]] = []
    y = x
    while y.p != 0 and y.q != 0:
        if abs(y.p) >= y.q:
            k = fr.eps * (y.p // y.q)
            steps.append(("B", -k))
            y = _slope_step(y, "B", -k, fr.eps)
        else:
            k = y.q // y.p
            steps.append(("A", -k))
            y = _slope_step(y, "A", -k, fr.eps)
    c = fr.alpha if y.p == 0 else fr.beta
    for which, k in reversed(steps):
        c = apply(fr.generator(which, -k), c)
    return c


def slope_of_curve(c) -> Slope:
    from .curves import intersection_number as i

    fr = _frame(c.surface)
    p, q = i(c, fr.alpha) // fr.factor, i(c, fr.beta) // fr.factor
    if q == 0:
        return INF
    if p == 0:
        return Slope(0, 1)
    if i(c, fr.gamma) // fr.factor == abs(p - q):
        return Slope.of(p, q)
    return Slope.of(-p, q)


# --- dead ends in the Farey graph -----------------------------------------------------

def farey_neighbours(x: Slope, K: int) -> list[Slope]:
    """Neighbours (u + kp)/(v + kq) of x = p/q for |k| <= K."""
    if x.q == 0:
        return [Slope(k, 1) for k in range(-K, K + 1)]
    # p*v - q*u = 1
    _, s, t = _egcd(x.p, x.q)
    v, u = s, -t
    return [Slope.of(u + k * x.p, v + k * x.q) for k in range(-K, K + 1)]


def farey_dead_ends(z: Slope, r: int, bound: int, K: int = 3):
    """Every slope with |p|, q <= bound at distance r from z has a slope at distance
    r + 1 from z within distance 2 of it; distances are exact."""
    from .reports import INCONCLUSIVE, PASS, Report

    tested = [x for x in slopes_up_to(bound) if slope_distance(z, x) == r]
    failures, witnesses = [], []
    for x in tested:
        found = None
        for y in farey_neighbours(x, K):
            for w in [y] + farey_neighbours(y, K):
                if slope_distance(z, w) == r + 1:
                    found = w
                    break
            if found is not None:
                break
        if found is None:
            failures.append(str(x))
        elif len(witnesses) < 5:
            witnesses.append([str(x), str(found)])
    verdict = PASS if tested and not failures else INCONCLUSIVE
    diagnosis = ""
    if failures:
        diagnosis = f"{len(failures)} slopes found no extension among neighbours with |k| <= {K}"
    elif not tested:
        diagnosis = f"no slope with |p|, q <= {bound} lies at distance {r}"
    return Report(
        "dead-ends",
        None,
        {"center": str(z), "r": r, "graph": "farey"},
        {"bound": bound, "K": K},
        verdict,
        failures[:20] or witnesses,
        {"tested": len(tested), "failures": len(failures)},
        diagnosis,
    )

"""Truncated exploration of the curve graph: universes, balls, geodesics, shells."""

from __future__ import annotations

import os
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .curves import Curve, disjoint, intersection_at_most, intersection_number
from .errors import InvalidCurve, NotFound, Unreachable
from .reports import FAIL, INCONCLUSIVE, PASS, Report
from .surface import Surface
from .triangulation import Triangulation, reference_triangulation
from . import words as W

WORKERS_ENV = "CURVECOMPLEX_WORKERS"


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# --- enumeration --------------------------------------------------------------

def _edge_order(T: Triangulation) -> tuple[list[int], dict[int, list]]:
    order: list[int] = []
    for tri in T.triangles:
        for e in tri:
            if e not in order:
                order.append(e)
    closes: dict[int, list] = {}
    for tri in T.triangles:
        closes.setdefault(max(order.index(e) for e in tri), []).append(tri)
    return order, closes


def normal_vectors(T: Triangulation, bound: int):
    """Non-zero locally valid coordinate vectors of total weight <= bound."""
    order, closes = _edge_order(T)
    n = len(order)
    c = [0] * T.n_edges

    def rec(k: int, budget: int):
        if k == n:
            yield tuple(c)
            return
        e = order[k]
        for v in range(budget + 1):
            c[e] = v
            ok = True
            for tri in closes.get(k, ()):
                x, y, z = c[tri[0]], c[tri[1]], c[tri[2]]
                if (x + y + z) & 1 or x > y + z or y > x + z or z > x + y:
                    ok = False
                    break
            if ok:
                yield from rec(k + 1, budget - v)
        c[e] = 0

    for v in rec(0, bound):
        if any(v):
            yield v


@lru_cache(maxsize=32)
def enumerate_curves(surface: Surface, W_bound: int) -> tuple[Curve, ...]:
    """All curves of total normal weight <= ``W_bound``, ordered by (weight, coords)."""
    if W_bound <= 0:
        return ()
    T = reference_triangulation(surface)
    out = []
    for v in normal_vectors(T, W_bound):
        if T.has_peripheral_part(v):
            continue
        try:
            w = T.word_of(v)
        except InvalidCurve:
            continue
        c = Curve(surface, W.canonical(w))
        c.__dict__["coords"] = v
        out.append(c)
    out.sort(key=lambda c: (c.weight, c.coords))
    return tuple(out)


# --- adjacency ----------------------------------------------------------------

def adjacent(a: Curve, b: Curve) -> bool:
    """Edge relation of C(S): disjointness, or the Farey rule when the complexity is one."""
    if a == b:
        return False
    if a.surface.complexity == 1:
        target = 2 if a.surface.is_planar else 1
        return intersection_at_most(a, b, target + 1) == target
    return disjoint(a, b)


def _adjacency_rows(args):
    curves, lo, hi = args
    rows = []
    for k in range(lo, hi):
        rows.append([j for j in range(k + 1, len(curves)) if adjacent(curves[k], curves[j])])
    return rows


class Universe:
    """The full subgraph of C(S) spanned by curves of weight <= W."""

    def __init__(self, surface: Surface, W_bound: int):
        self.surface = surface
        self.W = W_bound
        self.curves = enumerate_curves(surface, W_bound)
        self.index = {c: k for k, c in enumerate(self.curves)}
        self.nbrs = self._build()

    def _build(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.curves)
        workers = _workers()
        if workers > 1 and n > 200:
            chunks = [(self.curves, lo, min(n, lo + 50)) for lo in range(0, n, 50)]
            with ProcessPoolExecutor(workers) as ex:
                upper = [row for rows in ex.map(_adjacency_rows, chunks) for row in rows]
        else:
            upper = _adjacency_rows((self.curves, 0, n))
        nb: list[list[int]] = [[] for _ in range(n)]
        for k, row in enumerate(upper):
            for j in row:
                nb[k].append(j)
                nb[j].append(k)
        return tuple(tuple(sorted(x)) for x in nb)

    def __contains__(self, c: Curve) -> bool:
        return c in self.index

    def __len__(self) -> int:
        return len(self.curves)

    def require(self, c: Curve) -> int:
        if c not in self.index:
            raise Unreachable(f"{c} is outside the weight-{self.W} universe")
        return self.index[c]

    def neighbours(self, c: Curve) -> list[Curve]:
        return [self.curves[j] for j in self.nbrs[self.require(c)]]

    def bfs(self, source: Curve, allowed=None) -> dict[int, int]:
        """Distances (by index) from ``source``; ``allowed`` restricts the vertex set."""
        s = self.require(source)
        dist = {s: 0}
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for w in self.nbrs[v]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = dist[v] + 1
                    dq.append(w)
        return dist

    @lru_cache(maxsize=4096)
    def distances(self, source: Curve) -> tuple[int, ...]:
        """Distance vector from ``source``; -1 marks unreachable vertices."""
        d = self.bfs(source)
        return tuple(d.get(k, -1) for k in range(len(self.curves)))

    def path(self, a: Curve, b: Curve, allowed=None) -> "PathInComplex | None":
        s, t = self.require(a), self.require(b)
        prev = {s: None}
        dq = deque([s])
        while dq:
            v = dq.popleft()
            if v == t:
                break
            for w in self.nbrs[v]:
                if w not in prev and (allowed is None or w in allowed):
                    prev[w] = v
                    dq.append(w)
        if t not in prev:
            return None
        seq = [t]
        while prev[seq[-1]] is not None:
            seq.append(prev[seq[-1]])
        return PathInComplex(tuple(self.curves[k] for k in reversed(seq)))


_UNIVERSES: dict[tuple[Surface, int], Universe] = {}


def universe(surface: Surface, W_bound: int) -> Universe:
    key = (surface, W_bound)
    if key not in _UNIVERSES:
        surface.require_kernel()
        _UNIVERSES[key] = Universe(surface, W_bound)
    return _UNIVERSES[key]


# --- samples and paths ----------------------------------------------------------

@dataclass(frozen=True)
class PathInComplex:
    vertices: tuple[Curve, ...]

    def __len__(self) -> int:
        return max(0, len(self.vertices) - 1)

    @property
    def length(self) -> int:
        return len(self)

    def is_valid(self) -> bool:
        return all(adjacent(x, y) for x, y in zip(self.vertices, self.vertices[1:]))

    def to_json(self) -> list:
        return [str(c) for c in self.vertices]


@dataclass(frozen=True)
class ComplexSample:
    center: Curve
    radius: int
    W: int
    layers: tuple[tuple[Curve, ...], ...]

    @cached_property
    def members(self) -> frozenset[Curve]:
        return frozenset(c for layer in self.layers for c in layer)

    def layer_of(self, c: Curve) -> int | None:
        for k, layer in enumerate(self.layers):
            if c in layer:
                return k
        return None

    @property
    def sizes(self) -> list[int]:
        return [len(x) for x in self.layers]


def ball(z: Curve, r: int, W_bound: int) -> ComplexSample:
    U = universe(z.surface, W_bound)
    dist = U.distances(z)
    layers = tuple(
        tuple(U.curves[j] for j, d in enumerate(dist) if d == k) for k in range(r + 1)
    )
    return ComplexSample(z, r, W_bound, layers)


def distance_upper(a: Curve, b: Curve, W_bound: int) -> tuple[int, PathInComplex]:
    """Shortest path inside the weight-``W_bound`` universe (an upper bound for d_S)."""
    U = universe(a.surface, W_bound)
    p = U.path(a, b)
    if p is None:
        raise Unreachable(f"{a} and {b} are disconnected in the weight-{W_bound} universe")
    return len(p), p


def distance_label(d: int, surface: Surface) -> str:
    """Certificate status of a universe distance."""
    return "exact" if d <= 2 else "upper-bound"


# --- checks ---------------------------------------------------------------------

def _truncation(W_bound: int, **extra) -> dict:
    return {"W": W_bound, **extra}


def _escape_candidates(U: Universe, j: int, dist: tuple[int, ...], powers=(2, -2, 1, -1, 3, -3)):
    """Curves a' with d(a, a') <= 2, built by twisting ``a`` off a neighbour.

    Complexity >= 2: for b disjoint from a and c disjoint from b crossing a,
    T_c^k(a) stays disjoint from b, and so does phi^N(a) for phi = T_x T_y^-1 built
    from two crossing curves x, y beside b.  A second round moves b to
    b' = T_e^m(b) with e disjoint from a; since T_e^m fixes a, the images of the
    first-round candidates under T_e^m are disjoint from b'.  Complexity one:
    T_b^k(a) stays adjacent to b.  Cores far from the centre come first.

    Yields ``(via, make, certificate)`` where ``via`` is the middle vertex when it
    lies outside the universe (else None) and ``make()`` builds a'.
    """
    from .curves import apply, compile_twist

    a = U.curves[j]
    r = dist[j]
    far_first = lambda m: (-dist[m], m)  # noqa: E731
    nbhd = sorted(U.nbrs[j], key=far_first)
    if U.surface.complexity == 1:
        for nb in nbhd:
            for k in powers:
                yield None, _lazy(compile_twist(U.curves[nb], k), a), (str(U.curves[nb]), k)
        return

    def first_round(nb):
        # (map, certificate) pairs whose image of a stays disjoint from b
        b = U.curves[nb]
        Y = sorted((m for m in U.nbrs[nb] if m != j), key=lambda m: (U.curves[m].weight, m))
        pairs = [(x, y) for x in Y[:6] for y in Y[:6] if x < y and not disjoint(U.curves[x], U.curves[y])]
        out = []
        for x, y in pairs[:2]:
            # a pseudo-Anosov of the piece beside b pushes a far from everything there
            phi = compile_twist(U.curves[x], 1) @ compile_twist(U.curves[y], -1)
            out += [(phi ** N, (str(U.curves[x]), str(U.curves[y]), N)) for N in (1, -1, 2, -2)]
        for m in sorted((m for m in U.nbrs[nb] if m != j), key=far_first):
            c = U.curves[m]
            if not disjoint(a, c):
                out += [(compile_twist(c, k), (str(c), k)) for k in powers]
        return out

    rounds = {nb: first_round(nb) for nb in nbhd}
    for nb in nbhd:
        for f, how in rounds[nb]:
            yield None, _lazy(f, a), (str(U.curves[nb]), *how)
    moved = []
    for nb in nbhd:
        b = U.curves[nb]
        for ne in nbhd:
            e = U.curves[ne]
            if ne == nb or disjoint(e, b):
                continue
            for m in (1, -1):
                g = compile_twist(e, m)
                bb = apply(g, b)
                dv = _augmented_distance(U, dist, bb)
                if dv == -1 or dv >= r:
                    moved.append((dv != r, len(moved), nb, e, m, g, bb))
    for _, _, nb, e, m, g, bb in sorted(moved, key=lambda t: t[:2]):
        for f, how in rounds[nb]:
            yield bb, _lazy(g @ f, a), (str(bb), *how, str(e), m)


def _lazy(f, a: Curve):
    from .curves import apply

    return lambda: apply(f, a)


def _augmented_distance(U: Universe, dist: tuple[int, ...], x: Curve, target: int | None = None) -> int:
    """Distance from the centre to ``x`` in the universe with ``x`` added.

    Neighbours are scanned nearest first, so the first hit decides.  With a
    ``target`` the scan stops once no vertex could give that distance, and -1 is
    returned.
    """
    if x in U.index:
        return dist[U.index[x]]
    order = sorted((k for k, d in enumerate(dist) if d >= 0), key=lambda k: (dist[k], k))
    for k in order:
        if target is not None and dist[k] >= target:
            break
        if adjacent(x, U.curves[k]):
            return dist[k] + 1
    return -1


def _escapes(
    U: Universe, dist: tuple[int, ...], r: int, via: Curve | None, make, max_weight: int, seen: dict
) -> bool:
    """Whether a' lands at distance r + 1 in the universe with ``via`` and a' added."""
    if via is None:
        x = make()
        return x.weight <= max_weight and _augmented_distance(U, dist, x, r + 1) == r + 1
    if via not in seen:
        seen[via] = _augmented_distance(U, dist, via)
    dv = seen[via]
    if dv != -1 and dv < r:
        return False
    x = make()
    if x.weight > max_weight:
        return False
    # a' meets nothing below layer r; its neighbour at layer r is via or a universe curve
    d = _augmented_distance(U, dist, x, r + 1)
    if d != -1:
        return d == r + 1
    return dv == r


def no_dead_ends_check(
    z: Curve,
    r: int,
    W_bound: int,
    W_outer: int | None = None,
    construct: bool = True,
    max_candidates: int = 400,
    max_weight: int | None = None,
) -> Report:
    """Every vertex of layer r has a vertex of layer r+1 within distance 2.

    Layers are measured in the weight-``W_outer`` universe and the tested vertices
    are those of weight <= ``W_bound``.  When the universe has no suitable a',
    candidates obtained by twisting a off one of its neighbours are tried, their
    distance to the centre being measured in the universe with that one curve added.
    """
    if z.surface.complexity == 1:
        # exact Farey computation; W_bound bounds numerators and denominators
        from .farey import farey_dead_ends, slope_of_curve

        rep = farey_dead_ends(slope_of_curve(z), r, W_bound)
        rep.surface = z.surface
        rep.parameters["center"] = str(z)
        return rep
    W2 = W_outer if W_outer is not None else W_bound + 4
    max_weight = max_weight or 8 * W2
    U = universe(z.surface, W2)
    dist = U.distances(z)
    tested = [j for j, d in enumerate(dist) if d == r and U.curves[j].weight <= W_bound]
    failures, constructed = [], []
    seen: dict[Curve, int] = {}
    for j in tested:
        near = {j}
        frontier = [j]
        for _ in range(2):
            frontier = [w for v in frontier for w in U.nbrs[v] if w not in near]
            near.update(frontier)
        if any(dist[w] == r + 1 for w in near):
            continue
        found = None
        if construct:
            for n, (via, make, how) in enumerate(_escape_candidates(U, j, dist)):
                if n >= max_candidates:
                    break
                if _escapes(U, dist, r, via, make, max_weight, seen):
                    found = (str(U.curves[j]), *how)
                    break
        if found is None:
            failures.append(str(U.curves[j]))
        else:
            constructed.append(found)
    if failures:
        verdict = INCONCLUSIVE
        diagnosis = (
            f"{len(failures)} vertices of layer {r} have no layer-{r + 1} vertex within distance 2 "
            f"inside the weight-{W2} universe or among twisted candidates; larger weights may supply one"
        )
    elif not tested:
        verdict, diagnosis = INCONCLUSIVE, f"layer {r} is empty at weight {W_bound}"
    else:
        verdict, diagnosis = PASS, ""
    return Report(
        "dead-ends",
        z.surface,
        {"center": str(z), "r": r},
        _truncation(
            W_bound, W_outer=W2, max_candidates=max_candidates if construct else 0, max_weight=max_weight
        ),
        verdict,
        failures[:20],
        {"tested": len(tested), "failures": len(failures), "constructed": len(constructed)},
        diagnosis,
    )


def shell(z: Curve, r: int, d: int, W_bound: int) -> list[Curve]:
    U = universe(z.surface, W_bound)
    dist = U.distances(z)
    return [U.curves[j] for j, x in enumerate(dist) if r <= x <= r + 2 * d]


def _components(U: Universe, verts: set[int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for v in sorted(verts):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        dq = deque([v])
        while dq:
            x = dq.popleft()
            for y in U.nbrs[x]:
                if y in verts and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    dq.append(y)
        comps.append(sorted(comp))
    return comps


def shell_connectivity(z: Curve, r: int, d: int, W_bound: int) -> Report:
    """Components of B(z, r+2d) minus B(z, r-1) inside the universe."""
    if z.surface.complexity < 2:
        from .errors import WrongComplexity

        raise WrongComplexity("shell connectivity needs complexity at least 2")
    U = universe(z.surface, W_bound)
    dist = U.distances(z)
    verts = {j for j, x in enumerate(dist) if x >= 0 and r <= x <= r + 2 * d}
    comps = _components(U, verts)
    reps = [str(U.curves[c[0]]) for c in comps]
    outer = max(dist)
    diagnosis = ""
    if len(comps) == 1:
        verdict = PASS
    elif not comps:
        verdict, diagnosis = INCONCLUSIVE, f"no vertex at distance >= {r} in the weight-{W_bound} universe"
    else:
        verdict = INCONCLUSIVE
        sizes = sorted((len(c) for c in comps), reverse=True)
        diagnosis = (
            f"{len(comps)} components (sizes {sizes}) in the weight-{W_bound} universe; "
            f"connecting paths may need curves heavier than {W_bound}"
        )
    return Report(
        "shell-check",
        z.surface,
        {"center": str(z), "r": r, "d": d},
        _truncation(W_bound),
        verdict,
        reps,
        {"components": len(comps), "shell_size": len(verts), "universe_radius": outer},
        diagnosis,
    )


def detour_search(a: Curve, b: Curve, z: Curve, r: int, W_bound: int) -> PathInComplex:
    """A path from a to b avoiding B(z, r-1) inside the universe."""
    U = universe(z.surface, W_bound)
    dist = U.distances(z)
    allowed = {j for j, x in enumerate(dist) if x == -1 or x >= r}
    if U.require(a) not in allowed or U.require(b) not in allowed:
        raise ValueError("endpoints must lie outside B(z, r-1)")
    p = U.path(a, b, allowed)
    if p is None:
        raise NotFound(f"no detour from {a} to {b} avoiding B({z}, {r - 1}) at weight {W_bound}")
    return p


@dataclass(frozen=True)
class SlimnessResult:
    delta: int
    defects: tuple[int, ...]
    triangles: tuple[tuple[str, str, str], ...]


def _side_defect(U: Universe, side: PathInComplex, others: list[PathInComplex]) -> int:
    targets = {U.index[c] for p in others for c in p.vertices}
    worst = 0
    for v in side.vertices:
        dv = U.distances(v)
        best = min((dv[t] for t in targets if dv[t] >= 0), default=0)
        worst = max(worst, best)
    return worst


def triangle_defect(U: Universe, x: Curve, y: Curve, z: Curve) -> int:
    """Largest distance from a point of one side to the union of the other two."""
    sides = []
    for p, q in ((x, y), (y, z), (z, x)):
        path = U.path(p, q)
        if path is None:
            raise Unreachable(f"{p} and {q} are disconnected")
        sides.append(path)
    return max(_side_defect(U, sides[k], [sides[(k + 1) % 3], sides[(k + 2) % 3]]) for k in range(3))


def slimness_sample(surface: Surface, W_bound: int, trials: int, seed: int) -> SlimnessResult:
    """Empirical slimness constant over random geodesic triangles in the universe."""
    U = universe(surface, W_bound)
    rng = random.Random(seed)
    comp = max(_components(U, set(range(len(U)))), key=len) if len(U) else []
    defects, tris = [], []
    for _ in range(trials):
        x, y, z = (U.curves[rng.choice(comp)] for _ in range(3))
        defects.append(triangle_defect(U, x, y, z))
        tris.append((str(x), str(y), str(z)))
    return SlimnessResult(max(defects, default=0), tuple(defects), tuple(tris))

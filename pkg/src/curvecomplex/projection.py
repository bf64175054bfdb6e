"""Subsurface projections: arc surgery, d_Z, annular twisting, and the scans built on them.

Non-annular subsurfaces are complementary components of a single curve in a
planar surface.  A braid moves the boundary curve to a round curve
``x_f ... x_l``; the free group then splits as ``<x_f..x_l> * <other letters>``
and the arcs of a curve on either side are read off as syllables of its cyclic
word, powers of the boundary being absorbed into the outer side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .complex import PathInComplex, distance_upper, enumerate_curves, universe
from .curves import Curve, apply, compile_twist, disjoint, intersection_number
from .errors import DoesNotCut, InvalidCurve, VertexMissesZ, WrongComplexity
from .farey import Slope, slope_distance
from .mapping import apply_braid, invert_generators, standardize
from .reports import FAIL, INCONCLUSIVE, PASS, Report, histogram_csv
from .surface import Surface
from . import words as W

# Largest diameter of a single projection, in C(Z).  Two surgered curves from
# arcs of one curve meet at most four times in a four-holed sphere, which is
# Farey distance at most 2; annular projections of one curve have diameter 1
# in the twisting surrogate.  The scans assert it.
D0 = 2


@dataclass(frozen=True, order=True)
class SubsurfaceDescriptor:
    ambient: Surface
    kind: str  # "annular" or "nonannular"
    core: Curve  # core of the annulus, or the boundary curve
    side: tuple[int, ...] = ()  # punctures of the selected component

    @property
    def is_annular(self) -> bool:
        return self.kind == "annular"

    @property
    def boundary(self) -> tuple[Curve, ...]:
        return (self.core,)

    @property
    def complexity(self) -> int:
        return 0 if self.is_annular else len(self.side) - 2

    def __str__(self) -> str:
        if self.is_annular:
            return f"A({self.core})"
        return f"Y({self.core}|{','.join(map(str, self.side))})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "core": str(self.core), "side": list(self.side)}


def annulus(c: Curve) -> SubsurfaceDescriptor:
    return SubsurfaceDescriptor(c.surface, "annular", c)


def puncture_sides(c: Curve) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Punctures on each side of a planar curve; the second side holds the last puncture."""
    n = c.surface.boundary_count
    inside = tuple(k + 1 for k, x in enumerate(c.homology) if x)
    outside = tuple(p for p in range(1, n + 1) if p not in inside)
    return inside, outside


def complement_component(c: Curve, side: tuple[int, ...]) -> SubsurfaceDescriptor:
    s = c.surface
    if not s.is_planar:
        raise WrongComplexity("non-annular subsurfaces are supported on planar surfaces only")
    side = tuple(sorted(side))
    if side not in puncture_sides(c):
        raise ValueError(f"{side} is not a side of {c}")
    if len(side) < 3:
        raise ValueError("a pants is not a subsurface for projection")
    return SubsurfaceDescriptor(s, "nonannular", c, side)


@lru_cache(maxsize=64)
def enumerate_subsurfaces(surface: Surface, W_bound: int) -> tuple[SubsurfaceDescriptor, ...]:
    """Annuli with core weight <= W plus complexity-one complements of single curves."""
    if surface.complexity < 2:
        raise WrongComplexity("strict subsurfaces need complexity at least 2")
    out = []
    for c in enumerate_curves(surface, W_bound):
        out.append(annulus(c))
        if surface.is_planar:
            for side in puncture_sides(c):
                if len(side) == 3:
                    out.append(SubsurfaceDescriptor(surface, "nonannular", c, side))
    return tuple(out)


# --- standard position ----------------------------------------------------------

def _permute(n: int, gens, punctures) -> tuple[int, ...]:
    pts = set(punctures)
    for _, i, _e in gens:
        j = i + 1 if i < n - 1 else n
        pts = {j if p == i else i if p == j else p for p in pts}
    return tuple(sorted(pts))


@dataclass(frozen=True)
class _Standard:
    path: tuple  # braid generators taking the boundary to the round curve
    first: int
    last: int
    inner: bool  # the selected component lies on the round curve's inner side

    @property
    def round(self) -> W.Word:
        return tuple(range(self.first, self.last + 1))

    def to_standard(self, n: int, w: W.Word) -> W.Word:
        for _, i, e in self.path:
            w = apply_braid(n, i, e, w)
        return w

    def from_standard(self, n: int, w: W.Word) -> W.Word:
        for _, i, e in invert_generators(self.path):
            w = apply_braid(n, i, e, w)
        return w


@lru_cache(maxsize=100_000)
def _standard(Z: SubsurfaceDescriptor) -> _Standard:
    n = Z.ambient.boundary_count
    path, r = standardize(n, Z.core.word)
    first, last = min(r), max(r)
    assert tuple(r) == tuple(range(first, last + 1)), r
    image = _permute(n, path, Z.side)
    inner = image == tuple(range(first, last + 1))
    return _Standard(path, first, last, inner)


def _syllables(w: W.Word, first: int, last: int) -> list[tuple[bool, W.Word]]:
    """Cyclic free-product syllables ``(is_inner, word)`` of a cyclic word."""
    inner = [first <= abs(x) <= last for x in w]
    if all(inner) or not any(inner):
        return [(inner[0], w)]
    k = next(i for i in range(len(w)) if inner[i] != inner[i - 1])
    w, inner = w[k:] + w[:k], inner[k:] + inner[:k]
    out: list[tuple[bool, list[int]]] = []
    for x, t in zip(w, inner):
        if out and out[-1][0] == t:
            out[-1][1].append(x)
        else:
            out.append((t, [x]))
    return [(t, tuple(s)) for t, s in out]


def _boundary_power(s: W.Word, rnd: W.Word) -> bool:
    L = len(rnd)
    if len(s) % L:
        return False
    k = len(s) // L
    return s == W.power(rnd, k) or s == W.power(rnd, -k)


def _arcs(w: W.Word, st: _Standard) -> tuple[list[W.Word], int]:
    """Arcs of the cyclic word on the selected side, and the number of crossings with the boundary."""
    rnd = st.round
    syl = _syllables(w, st.first, st.last)
    if len(syl) == 1:
        return [], 0
    excursions = [(t and not _boundary_power(s, rnd)) for t, s in syl]
    crossings = 2 * sum(excursions)
    if not crossings:
        return [], 0
    if st.inner:
        return [s for (t, s), e in zip(syl, excursions) if e], crossings
    # outer side: maximal runs between excursions, boundary powers absorbed
    k0 = excursions.index(True)
    syl, excursions = syl[k0:] + syl[:k0], excursions[k0:] + excursions[:k0]
    blocks: list[list[int]] = []
    for (t, s), e in zip(syl, excursions):
        if e:
            blocks.append([])
        else:
            blocks[-1].extend(s)
    return [tuple(b) for b in blocks if b], crossings


def _on_side(w: W.Word, st: _Standard) -> bool:
    """Whether a cyclic word disjoint from the round curve lies on the selected side."""
    syl = _syllables(w, st.first, st.last)
    inside = len(syl) == 1 and syl[0][0]
    return inside == st.inner


@dataclass(frozen=True)
class ProjectionResult:
    subsurface: SubsurfaceDescriptor
    vertices: tuple[Curve, ...]
    slopes: tuple[Slope, ...]
    diameter: int

    def to_json(self) -> dict:
        return {
            "subsurface": self.subsurface.to_json(),
            "vertices": [str(c) for c in self.vertices],
            "slopes": [str(s) for s in self.slopes],
            "diameter": self.diameter,
        }


def cuts(a, Z: SubsurfaceDescriptor) -> bool:
    """Whether every representative of ``a`` meets ``Z`` (markings: some curve does)."""
    curves = getattr(a, "curves", None)
    if curves is not None:
        return any(cuts(c, Z) for c in curves)
    c = Z.core
    if Z.is_annular:
        return intersection_number(a, c) > 0
    if a == c:
        return False
    if not disjoint(a, c):
        return True
    st = _standard(Z)
    n = Z.ambient.boundary_count
    return _on_side(W.cyclic_reduce(st.to_standard(n, a.word)), st)


@lru_cache(maxsize=64)
def _frame(surface: Surface, first: int, last: int, inner: bool) -> tuple[Curve, Curve, Curve]:
    """Reference curves carrying slopes 0/1, 1/0 and 1/1 in a standard four-holed sphere."""
    n = surface.boundary_count
    st = _Standard((), first, last, inner)
    rnd = Curve.from_word(surface, st.round)
    for bound in (8 * n, 12 * n, 16 * n):
        inside = [
            c
            for c in enumerate_curves(surface, bound)
            if c != rnd and disjoint(c, rnd) and _on_side(c.word, st)
        ]
        try:
            alpha = inside[0]
            beta = next(c for c in inside if intersection_number(c, alpha) == 2)
            gamma = next(
                c
                for c in inside
                if c not in (alpha, beta)
                and intersection_number(c, alpha) == 2
                and intersection_number(c, beta) == 2
            )
            break
        except (IndexError, StopIteration):
            continue
    else:
        raise AssertionError(f"no reference curves beside {rnd}")
    return alpha, beta, gamma


def _slope(c: Curve, frame: tuple[Curve, Curve, Curve]) -> Slope:
    alpha, beta, gamma = frame
    p, q = intersection_number(c, alpha) // 2, intersection_number(c, beta) // 2
    if q == 0:
        return Slope(1, 0)
    if p == 0:
        return Slope(0, 1)
    if intersection_number(c, gamma) // 2 == abs(p - q):
        return Slope.of(p, q)
    return Slope.of(-p, q)


@lru_cache(maxsize=500_000)
def _project_standard(a: Curve, Z: SubsurfaceDescriptor) -> tuple[tuple[Curve, ...], tuple[Slope, ...]]:
    s = Z.ambient
    n = s.boundary_count
    st = _standard(Z)
    w = W.cyclic_reduce(st.to_standard(n, a.word))
    rnd_curve = Curve.from_word(s, st.round)
    arcs, crossings = _arcs(w, st)
    expected = intersection_number(a, Z.core)
    if crossings != expected:
        raise AssertionError(f"syllable count {crossings} disagrees with i = {expected} for {a} on {Z}")
    if not arcs:
        if not _on_side(w, st) or W.canonical(w) == rnd_curve.word:
            raise DoesNotCut(f"{a} does not cut {Z}")
        found = {Curve(s, W.canonical(w))}
    else:
        found = set()
        for y in arcs:
            for k in (-1, 0, 1):
                cand = W.cyclic_reduce(y + W.power(st.round, k))
                try:
                    c = Curve.from_word(s, cand)
                except InvalidCurve:
                    continue
                if c != rnd_curve and disjoint(c, rnd_curve) and _on_side(c.word, st):
                    found.add(c)
        if not found:
            raise AssertionError(f"surgery produced nothing for {a} on {Z}")
    frame = _frame(s, st.first, st.last, st.inner)
    std = tuple(sorted(found))
    return std, tuple(_slope(c, frame) for c in std)


def _diameter(slopes) -> int:
    return max((slope_distance(x, y) for x, y in combinations(sorted(set(slopes)), 2)), default=0)


def project(a: Curve, Z: SubsurfaceDescriptor) -> ProjectionResult:
    """pi_Z(a) for a non-annular ``Z`` with its diameter in C(Z)."""
    if Z.is_annular:
        raise ValueError("annular projections are measured through annular_dZ")
    if Z.complexity != 1:
        raise WrongComplexity("projections are computed into complexity-one components")
    if not cuts(a, Z):
        raise DoesNotCut(f"{a} does not cut {Z}")
    std, slopes = _project_standard(a, Z)
    st = _standard(Z)
    n = Z.ambient.boundary_count
    verts = tuple(sorted(Curve(Z.ambient, W.canonical(st.from_standard(n, c.word))) for c in std))
    d = _diameter(slopes)
    if d > D0:
        raise AssertionError(f"projection diameter {d} exceeds D0 = {D0} for {a} on {Z}")
    return ProjectionResult(Z, verts, slopes, d)


def _twist_window(a: Curve, b: Curve, c: Curve) -> int:
    ia, ib = intersection_number(a, c), intersection_number(b, c)
    return 2 * intersection_number(a, b) // (ia * ib) + 1


def annular_dZ(a: Curve, b: Curve, c: Curve) -> int:
    """Twisting surrogate: 1 + |n*| with n* minimizing i(T_c^n a, b) over a window."""
    if intersection_number(a, c) == 0 or intersection_number(b, c) == 0:
        raise DoesNotCut(f"annulus about {c} is not cut by both curves")
    return _annular(a, b, c)


@lru_cache(maxsize=None)
def _annular(a: Curve, b: Curve, c: Curve) -> int:
    if a == b:
        return 1
    N = _twist_window(a, b, c)
    values = {0: intersection_number(a, b)}
    for e in (1, -1):
        step, x = compile_twist(c, e), a
        for n in range(1, N + 1):
            x = apply(step, x)
            values[e * n] = intersection_number(x, b)
    best = min(values, key=lambda n: (values[n], abs(n), n))
    return 1 + abs(best)


def dZ(a: Curve, b: Curve, Z: SubsurfaceDescriptor) -> int:
    if Z.is_annular:
        return annular_dZ(a, b, Z.core)
    for x in (a, b):
        if not cuts(x, Z):
            raise DoesNotCut(f"{x} does not cut {Z}")
    _, sa = _project_standard(a, Z)
    _, sb = _project_standard(b, Z)
    return _diameter(sa + sb)


# --- scans ------------------------------------------------------------------------

def lipschitz_scan(path: PathInComplex, Z: SubsurfaceDescriptor) -> Report:
    verts = path.vertices
    for v in verts:
        if not cuts(v, Z):
            raise VertexMissesZ(f"{v} does not cut {Z}")
    N = len(path)
    value = dZ(verts[0], verts[-1], Z)
    verdict = PASS if N == 0 or value <= 2 * N else FAIL
    return Report(
        "lipschitz",
        Z.ambient,
        {"path": path.to_json(), "subsurface": Z.to_json()},
        {},
        verdict,
        [] if verdict == PASS else [path.to_json()],
        {"N": N, "dZ": value, "bound": 2 * N},
    )


def _cut_by_all(curves, subsurfaces):
    return [Z for Z in subsurfaces if all(cuts(c, Z) for c in curves)]


def bgi_scan(a: Curve, b: Curve, W_bound: int, W_sub: int | None = None) -> Report:
    """Largest d_Z(a, b) over enumerated Z cut by every vertex of a geodesic witness."""
    s = a.surface
    if s.complexity < 2:
        raise WrongComplexity("bounded geodesic image needs complexity at least 2")
    d, path = distance_upper(a, b, W_bound)
    subs = enumerate_subsurfaces(s, W_sub if W_sub is not None else W_bound)
    values = [dZ(a, b, Z) for Z in _cut_by_all(path.vertices, subs)]
    top = max(values, default=0)
    witness = []
    if values:
        Zs = _cut_by_all(path.vertices, subs)
        witness = [str(Zs[values.index(top)])]
    return Report(
        "bgi",
        s,
        {"a": str(a), "b": str(b)},
        {"W": W_bound, "W_sub": W_sub if W_sub is not None else W_bound},
        PASS,
        witness,
        {"distance": d, "geodesic": path.to_json(), "max_dZ": top, "values": sorted(values)},
    )


def bgi_histogram(reports) -> str:
    return histogram_csv(r.metrics["max_dZ"] for r in reports)


def _curves_of(x) -> tuple[Curve, ...]:
    return tuple(getattr(x, "curves", (x,)))


def _dZ_sets(A, B, Z) -> int:
    """d_Z between two finite collections, as the diameter of the union of projections."""
    if Z.is_annular:
        ca = [x for x in A if cuts(x, Z)]
        cb = [x for x in B if cuts(x, Z)]
        return max(annular_dZ(x, y, Z.core) for x in ca for y in cb)
    slopes = []
    for x in (*A, *B):
        if cuts(x, Z):
            slopes.extend(_project_standard(x, Z)[1])
    return _diameter(slopes)


def cobounded_report(a, b, c: int, W_bound: int) -> Report:
    """Is d_Z(a, b) <= c over every enumerated strict Z cut by both?"""
    A, B = _curves_of(a), _curves_of(b)
    s = A[0].surface
    worst, arg = 0, None
    for Z in enumerate_subsurfaces(s, W_bound):
        if not (cuts(a, Z) and cuts(b, Z)):
            continue
        v = _dZ_sets(A, B, Z)
        if v > worst:
            worst, arg = v, Z
    verdict = PASS if worst <= c else FAIL
    return Report(
        "cobounded",
        s,
        {"a": [str(x) for x in A], "b": [str(x) for x in B], "c": c},
        {"W": W_bound},
        verdict,
        [str(arg)] if arg is not None else [],
        {"max_dZ": worst},
    )


def boundary_of_fill(u: Curve, w: Curve, W_bound: int) -> list[Curve]:
    """Boundary curves of the subsurface filled by ``u`` and ``w``, seen in the universe.

    A curve disjoint from both is a boundary curve exactly when it is disjoint
    from every other such curve.
    """
    U = universe(u.surface, W_bound)
    outside = [x for x in U.curves if x not in (u, w) and disjoint(x, u) and disjoint(x, w)]
    return [x for x in outside if all(y == x or disjoint(x, y) for y in outside)]


def is_tight(path: PathInComplex, W_bound: int) -> bool:
    v = path.vertices
    for k in range(1, len(v) - 1):
        if v[k] not in boundary_of_fill(v[k - 1], v[k + 1], W_bound):
            return False
    return True


def tightness_and_tight_scan(path: PathInComplex, c: int, W_bound: int) -> Report:
    tight = is_tight(path, W_bound)
    s = path.vertices[0].surface
    samples = []
    if tight and len(path) >= 2:
        a, b = path.vertices[0], path.vertices[-1]
        for Z in enumerate_subsurfaces(s, W_bound):
            if not (cuts(a, Z) and cuts(b, Z)):
                continue
            base = dZ(a, b, Z)
            for v in path.vertices[1:-1]:
                if cuts(v, Z):
                    samples.append(max(dZ(a, v, Z), dZ(v, b, Z)) - base)
    return Report(
        "tight",
        s,
        {"path": path.to_json(), "c": c},
        {"W": W_bound},
        PASS if tight else INCONCLUSIVE,
        [] if tight else [path.to_json()],
        {"tight": tight, "c1_sample": max(samples, default=0)},
        "" if tight else "geodesic witness is not tight within the universe",
    )


def measured_D0(surface: Surface, W_bound: int, samples: int, seed: int) -> int:
    """Largest projection diameter over random (curve, subsurface) pairs."""
    rng = random.Random(seed)
    curves = enumerate_curves(surface, W_bound)
    subs = [Z for Z in enumerate_subsurfaces(surface, W_bound) if not Z.is_annular]
    worst = 0
    for _ in range(samples):
        a, Z = rng.choice(curves), rng.choice(subs)
        if cuts(a, Z):
            worst = max(worst, project(a, Z).diameter)
    return worst


def dz_histogram(values) -> str:
    return histogram_csv(values)


__all__ = [
    "D0",
    "SubsurfaceDescriptor",
    "ProjectionResult",
    "annulus",
    "complement_component",
    "puncture_sides",
    "enumerate_subsurfaces",
    "cuts",
    "project",
    "dZ",
    "annular_dZ",
    "lipschitz_scan",
    "bgi_scan",
    "bgi_histogram",
    "cobounded_report",
    "boundary_of_fill",
    "is_tight",
    "tightness_and_tight_scan",
    "measured_D0",
]

"""Complete clean markings, elementary moves, and the extension constructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .complex import PathInComplex, adjacent, enumerate_curves, universe
from .curves import Curve, apply, compile_twist, disjoint, intersection_number
from .errors import (
    BaseNotPants,
    TransversalNotMinimal,
    TransversalOutsideXa,
    TruncationExhausted,
    WrongComplexity,
)
from .mapping import MappingClass, halftwist, is_pants_curve, twist
from .surface import Surface


@dataclass(frozen=True, order=True)
class Marking:
    """Pants decomposition ``base`` with ``transversals[k]`` attached to ``base[k]``."""

    surface: Surface
    base: tuple[Curve, ...]
    transversals: tuple[Curve, ...]

    @classmethod
    def of(cls, pairs) -> "Marking":
        pairs = sorted(pairs)
        s = pairs[0][0].surface
        return cls(s, tuple(a for a, _ in pairs), tuple(t for _, t in pairs))

    @property
    def pairs(self) -> list[tuple[Curve, Curve]]:
        return list(zip(self.base, self.transversals))

    @cached_property
    def curves(self) -> tuple[Curve, ...]:
        return self.base + self.transversals

    def transversal(self, a: Curve) -> Curve:
        return self.transversals[self.base.index(a)]

    def to_json(self) -> dict:
        return {
            "base": [c.to_json() for c in self.base],
            "transversals": {str(k): t.to_json() for k, t in enumerate(self.transversals)},
        }

    @classmethod
    def from_json(cls, surface: Surface, d: dict) -> "Marking":
        base = [Curve.from_json(surface, x) for x in d["base"]]
        trans = [Curve.from_json(surface, d["transversals"][str(k)]) for k in range(len(base))]
        return cls.of(zip(base, trans))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}:{t}" for a, t in self.pairs) + "}"


# --- complementary pieces ---------------------------------------------------------

def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def _peripheral_homology(s: Surface) -> list[tuple[int, ...]]:
    out = []
    for face in s.ribbon.faces:
        v = [0] * s.rank
        for x in face:
            v[abs(x) - 1] += 1 if x > 0 else -1
        out.append(tuple(v))
    return out


def piece_type(a: Curve, others) -> str:
    """``"torus"`` when the component of S minus ``others`` holding ``a`` is a
    once-holed torus, ``"sphere"`` when it is a four-holed sphere.

    ``a`` is non-separating in its piece exactly when its homology class escapes
    the span of the other curves and the punctures.
    """
    if a.surface.is_planar:
        return "sphere"
    span = [c.homology for c in others] + _peripheral_homology(a.surface)
    return "torus" if _rank(span + [a.homology]) > _rank(span) else "sphere"


def minimal_intersection(a: Curve, others) -> int:
    return 1 if piece_type(a, others) == "torus" else 2


def validate_marking(m: Marking) -> None:
    s = m.surface
    base = m.base
    if len(base) != s.complexity or len(set(base)) != len(base):
        raise BaseNotPants(f"expected {s.complexity} distinct base curves, got {len(set(base))}")
    for x in range(len(base)):
        for y in range(x + 1, len(base)):
            if not disjoint(base[x], base[y]):
                raise BaseNotPants(f"{base[x]} and {base[y]} intersect")
    for k, (a, t) in enumerate(m.pairs):
        others = base[:k] + base[k + 1 :]
        if t in base or any(not disjoint(t, b) for b in others):
            raise TransversalOutsideXa(f"transversal {t} of {a} leaves its piece")
        need = minimal_intersection(a, others)
        got = intersection_number(a, t)
        if got != need:
            raise TransversalNotMinimal(f"i({a}, {t}) = {got}, minimum is {need}")


def is_valid(m: Marking) -> bool:
    try:
        validate_marking(m)
    except (BaseNotPants, TransversalOutsideXa, TransversalNotMinimal):
        return False
    return True


# --- construction -----------------------------------------------------------------

def _closeness(c: Curve, target) -> tuple:
    tgt = target.vertices if isinstance(target, PathInComplex) else (target,)
    return (sum(intersection_number(c, t) for t in tgt), c.weight, c.coords)


def transversal_candidates(a: Curve, others, W_bound: int) -> list[Curve]:
    need = minimal_intersection(a, others)
    return [
        t
        for t in enumerate_curves(a.surface, W_bound)
        if t != a
        and t not in others
        and all(disjoint(t, b) for b in others)
        and intersection_number(a, t) == need
    ]


def complete_to_marking(b: Curve, target, W_bound: int) -> Marking:
    """A marking with ``b`` in its base whose other curves stay close to ``target``.

    Base curves and transversals are taken from the weight-``W_bound`` universe,
    each time choosing the candidate meeting the target least.
    """
    s = b.surface
    if s.complexity < 1:
        raise WrongComplexity("markings need complexity at least 1")
    base = [b]
    curves = enumerate_curves(s, W_bound)
    while len(base) < s.complexity:
        cands = [c for c in curves if c not in base and all(disjoint(c, x) for x in base)]
        if not cands:
            raise TruncationExhausted(f"no further base curve at weight {W_bound}")
        base.append(min(cands, key=lambda c: _closeness(c, target)))
    pairs = []
    for k, a in enumerate(base):
        others = base[:k] + base[k + 1 :]
        cands = transversal_candidates(a, others, W_bound)
        if not cands:
            raise TruncationExhausted(f"no transversal for {a} at weight {W_bound}")
        pairs.append((a, min(cands, key=lambda c: _closeness(c, target))))
    m = Marking.of(pairs)
    validate_marking(m)
    return m


# --- elementary moves ---------------------------------------------------------------

def _twist_map(a: Curve, others, e: int) -> MappingClass:
    """Half-twist about a planar pants curve, full twist otherwise."""
    s = a.surface
    if piece_type(a, others) == "sphere" and s.is_planar and is_pants_curve(s, a.word):
        return halftwist(s, a.word, e)
    return twist(s, a.word, e)


@dataclass(frozen=True, order=True)
class Move:
    tag: str  # "twist+", "twist-", "flip"
    index: int

    def to_json(self) -> list:
        return [self.tag, self.index]


def _clean(m_old: Marking, base: list[Curve], fixed: dict[int, Curve], W_bound: int) -> Marking:
    pairs = []
    for k, a in enumerate(base):
        others = base[:k] + base[k + 1 :]
        if k in fixed:
            pairs.append((a, fixed[k]))
            continue
        old = m_old.transversal(a) if a in m_old.base else None
        need = minimal_intersection(a, others)
        if (
            old is not None
            and all(disjoint(old, b) for b in others)
            and intersection_number(a, old) == need
        ):
            pairs.append((a, old))
            continue
        cands = transversal_candidates(a, others, W_bound)
        if not cands:
            raise TruncationExhausted(f"cleaning found no transversal for {a} at weight {W_bound}")
        total = lambda c: (sum(intersection_number(c, x) for x in m_old.curves), c.weight, c.coords)  # noqa: E731
        pairs.append((a, min(cands, key=total)))
    return Marking.of(pairs)


def apply_move(m: Marking, move: Move, W_bound: int = 40) -> Marking:
    k = move.index
    a, t = m.base[k], m.transversals[k]
    others = m.base[:k] + m.base[k + 1 :]
    if move.tag in ("twist+", "twist-"):
        e = 1 if move.tag == "twist+" else -1
        t2 = apply(_twist_map(a, others, e), t)
        return Marking.of([(b, t2 if b == a else m.transversal(b)) for b in m.base])
    if move.tag == "flip":
        base = [t if b == a else b for b in m.base]
        return _clean(m, base, {base.index(t): a}, W_bound)
    raise ValueError(f"unknown move {move.tag}")


def elementary_moves(m: Marking, W_bound: int = 40, strict: bool = False) -> dict[Move, Marking]:
    """All twist and flip moves.  A flip whose cleaning finds no transversal in the
    weight-``W_bound`` universe is left out unless ``strict``."""
    out = {}
    for k in range(len(m.base)):
        for tag in ("twist+", "twist-", "flip"):
            mv = Move(tag, k)
            try:
                out[mv] = apply_move(m, mv, W_bound)
            except TruncationExhausted:
                if strict:
                    raise
    return out


def marking_local_distance(m: Marking, m2: Marking, radius: int, W_bound: int = 40) -> int | None:
    """Distance in the marking graph if at most ``radius``; ``None`` otherwise."""
    if m == m2:
        return 0
    seen = {m}
    frontier = deque([(m, 0)])
    while frontier:
        x, d = frontier.popleft()
        if d == radius:
            continue
        for y in sorted(elementary_moves(x, W_bound).values()):
            if y == m2:
                return d + 1
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    return None


def marking_projection(m: Marking) -> Curve:
    return min(m.base, key=lambda c: (c.weight, c.coords))


def marking_dZ(m: Marking, m2: Marking, Z) -> int:
    """d_Z between markings: base curves cutting Z, or the transversal when Z is a base annulus."""
    from .projection import _dZ_sets

    return _dZ_sets(_marking_shadow(m, Z), _marking_shadow(m2, Z), Z)


def _marking_shadow(m: Marking, Z) -> tuple[Curve, ...]:
    from .projection import cuts

    if Z.is_annular and Z.core in m.base:
        return (m.transversal(Z.core),)
    return tuple(c for c in m.base if cuts(c, Z))


def marking_cuts(m: Marking, Z) -> bool:
    return bool(_marking_shadow(m, Z))


def random_marking(surface: Surface, rng, W_bound: int, scramble: int = 6) -> Marking:
    """A marking obtained from a completed one by random elementary moves."""
    curves = enumerate_curves(surface, W_bound)
    b = rng.choice(curves)
    m = complete_to_marking(b, rng.choice(curves), W_bound)
    for _ in range(rng.randint(0, scramble)):
        moves = elementary_moves(m, W_bound)
        m = moves[sorted(moves)[rng.randrange(len(moves))]]
    return m


# --- extension constructions ----------------------------------------------------------

@dataclass(frozen=True)
class ExtensionResult:
    start: Curve
    target: Curve
    path: PathInComplex
    near: Curve  # the vertex of the path within distance one of the given curve
    power: int

    def to_json(self) -> dict:
        return {
            "start": str(self.start),
            "target": str(self.target),
            "path": self.path.to_json(),
            "near": str(self.near),
            "power": self.power,
        }


def filling_pair(surface: Surface, W_bound: int, inside=None):
    """Two curves such that no curve of the universe misses both (restricted to ``inside``)."""
    pool = [c for c in enumerate_curves(surface, W_bound) if inside is None or inside(c)]
    for x in pool:
        for y in pool:
            if intersection_number(x, y) == 0:
                continue
            if not any(c not in (x, y) and disjoint(c, x) and disjoint(c, y) for c in pool):
                return x, y
    raise TruncationExhausted(f"no filling pair at weight {W_bound}")


def _pseudo_anosov(x: Curve, y: Curve) -> MappingClass:
    return compile_twist(x, 1) @ compile_twist(y, -1)


def _orbit_graph(U, extra: list[Curve]):
    """Distances helper over the universe plus a few extra vertices."""
    verts = list(U.curves) + [c for c in extra if c not in U.index]
    index = {c: k for k, c in enumerate(verts)}
    nbrs = [list(U.nbrs[k]) for k in range(len(U.curves))] + [[] for _ in range(len(verts) - len(U.curves))]
    for k in range(len(U.curves), len(verts)):
        for j in range(len(verts)):
            if j != k and adjacent(verts[k], verts[j]):
                nbrs[k].append(j)
                if j < len(U.curves):
                    nbrs[j].append(k)
    return verts, index, nbrs


def _bfs(nbrs, s):
    dist = {s: 0}
    dq = deque([s])
    while dq:
        v = dq.popleft()
        for w in nbrs[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                dq.append(w)
    return dist


def _geodesic_through(verts, nbrs, s, t, via):
    """A shortest s-t path through some vertex of ``via``; ``None`` if none is shortest."""
    ds, dt = _bfs(nbrs, s), _bfs(nbrs, t)
    if t not in ds:
        return None
    total = ds[t]
    for v in sorted(via):
        if v in ds and v in dt and ds[v] + dt[v] == total:
            left = _walk(nbrs, ds, v)
            right = _walk(nbrs, dt, v)
            seq = list(reversed(left)) + right[1:]
            return PathInComplex(tuple(verts[k] for k in seq)), verts[v]
    return None


def _walk(nbrs, dist, v):
    """Path from ``v`` down to the BFS root of ``dist``."""
    out = [v]
    while dist[out[-1]] > 0:
        cur = out[-1]
        out.append(min(w for w in nbrs[cur] if dist.get(w, -1) == dist[cur] - 1))
    return out


def _component_filling_pair(a: Curve, W_bound: int):
    """Two curves filling the complexity-one piece of S minus ``a``.

    Any two distinct intersecting curves fill a surface of complexity one.
    """
    pool = [c for c in enumerate_curves(a.surface, W_bound) if c != a and disjoint(c, a)]
    for x in pool:
        for y in pool:
            if intersection_number(x, y) > 0:
                return x, y
    raise TruncationExhausted(f"no filling pair beside {a} at weight {W_bound}")


def extend_past_point(a: Curve, z: Curve, W_bound: int, N: int = 2) -> ExtensionResult:
    """A geodesic from ``z`` past a heavy target that runs within distance one of ``a``.

    The target is phi^N(z) (or phi^-N(z)) for a pseudo-Anosov phi of the piece of S
    minus ``a``; the geodesic is searched in the universe extended by the image of
    the universe under phi^N.
    """
    if a == z:
        raise ValueError("a and z must differ")
    s = a.surface
    if s.complexity < 2:
        raise WrongComplexity("extension past a point needs complexity at least 2")
    U = universe(s, W_bound)
    x, y = _component_filling_pair(a, W_bound)
    phi = _pseudo_anosov(x, y)
    for power in (N, -N):
        f = phi ** power
        t = apply(f, z)
        images = [apply(f, c) for c in U.curves]
        verts, index, nbrs = _orbit_graph(U, images + [t])
        ia = index[a]
        via = {ia, *nbrs[ia]}
        found = _geodesic_through(verts, nbrs, index[z], index[t], via)
        if found is not None:
            path, near = found
            return ExtensionResult(z, t, path, near, power)
    raise TruncationExhausted(f"no geodesic from {z} passes near {a} at weight {W_bound}")


def extend_past_marking(m: Marking, W_bound: int, N: int = 2):
    """Proxies k, l on a pseudo-Anosov orbit whose geodesic passes near a base curve of ``m``."""
    s = m.surface
    U = universe(s, W_bound)
    x, y = filling_pair(s, W_bound)
    psi = _pseudo_anosov(x, y)
    seed = marking_projection(m)
    k = apply(psi ** N, seed)
    ell = apply(psi ** (-N), seed)
    images = [apply(psi ** N, c) for c in U.curves] + [apply(psi ** (-N), c) for c in U.curves]
    verts, index, nbrs = _orbit_graph(U, images + [k, ell])
    via = set()
    for b in m.base:
        ib = index[b]
        via |= {ib, *nbrs[ib]}
    found = _geodesic_through(verts, nbrs, index[k], index[ell], via)
    if found is None:
        raise TruncationExhausted(f"no geodesic between the proxies passes near the base of {m}")
    path, near = found
    return k, ell, path

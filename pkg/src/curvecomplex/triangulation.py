"""Reference ideal triangulation and normal coordinates.

Cutting the surface along the arcs dual to the ribbon-graph loops leaves an
ideal ``2r``-gon whose sides are the half-edges in cyclic order; side ``s`` is
glued to the side of the inverse half-edge.  Fanning the polygon from its
vertex 0 gives ``-2 chi`` triangles and ``-3 chi`` edges.  Edges ``0..r-1`` are
the glued sides (one per generator), the rest are the diagonals ``(0, k)`` for
``k = 2..2r-2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import hashlib
import json

from .errors import (
    CornerNegative,
    Disconnected,
    NullHomotopic,
    ParityViolation,
    Peripheral,
)
from .surface import Surface
from . import words as W


@dataclass(frozen=True)
class Triangulation:
    surface: Surface
    triangles: tuple[tuple[int, int, int], ...]
    # polygon chord (u, v), u < v, carried by each edge
    chords: tuple[tuple[int, int], ...]
    side_partner: tuple[int, ...] = field(repr=False)

    @property
    def n_edges(self) -> int:
        return len(self.chords)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @cached_property
    def fingerprint(self) -> str:
        blob = json.dumps(
            {"triangles": self.triangles, "chords": self.chords, "pairs": self.side_partner}
        ).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @cached_property
    def _sides(self) -> int:
        return len(self.side_partner)

    def euler_characteristic(self) -> int:
        """Euler characteristic of the punctured surface (ideal vertices removed)."""
        return self.n_triangles - self.n_edges

    @cached_property
    def vertex_classes(self) -> tuple[int, ...]:
        """Puncture label of each polygon vertex."""
        n = self._sides
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        # side s runs from polygon vertex s to s+1 and is glued reversed to its partner
        for s in range(n):
            s2 = self.side_partner[s]
            for u, v in ((s, (s2 + 1) % n), ((s + 1) % n, s2)):
                parent[find(u)] = find(v)
        roots = sorted({find(x) for x in range(n)})
        return tuple(roots.index(find(x)) for x in range(n))

    def puncture_count(self) -> int:
        """Number of ideal-vertex classes after gluing."""
        return len(set(self.vertex_classes))

    @cached_property
    def corners(self) -> tuple[tuple[int, int, int, int], ...]:
        """``(puncture, e1, e2, opposite)``: the corner count is (c[e1] + c[e2] - c[opp]) / 2."""
        out = []
        lab = self.vertex_classes
        for j, (ea, eb, ec) in enumerate(self.triangles, start=1):
            out.append((lab[0], ea, ec, eb))
            out.append((lab[j], ea, eb, ec))
            out.append((lab[j + 1], eb, ec, ea))
        return tuple(out)

    def has_peripheral_part(self, coords) -> bool:
        """True when some puncture is surrounded by arcs in every corner."""
        low: dict[int, int] = {}
        for p, e1, e2, opp in self.corners:
            v = coords[e1] + coords[e2] - coords[opp]
            if v < low.get(p, 1 << 60):
                low[p] = v
        return any(v > 0 for v in low.values())

    def side_edge(self, s: int) -> int:
        """Edge carrying polygon side ``s``."""
        return abs(self.surface.ribbon.order[s]) - 1

    # -- words -> coordinates --------------------------------------------------

    def coordinates(self, w: W.Word) -> tuple[int, ...]:
        rg = self.surface.ribbon
        r = rg.rank
        coords = [0] * self.n_edges
        for t, x in enumerate(w):
            coords[abs(x) - 1] += 1
            s = rg.position[-w[t - 1]]
            e = rg.position[x]
            lo, hi = min(s, e), max(s, e)
            for k in range(max(lo + 1, 2), min(hi, 2 * r - 2) + 1):
                coords[r + k - 2] += 1
        return tuple(coords)

    # -- coordinates -> words ----------------------------------------------------

    def check_local(self, coords) -> None:
        for tri in self.triangles:
            x, y, z = (coords[e] for e in tri)
            if (x + y + z) % 2:
                raise ParityViolation(f"odd weight sum in triangle {tri}: {(x, y, z)}")
            if min(x + y - z, y + z - x, z + x - y) < 0:
                raise CornerNegative(f"negative corner in triangle {tri}: {(x, y, z)}")

    @cached_property
    def chord_index(self) -> dict[tuple[int, int], int]:
        n = self._sides
        idx = {ch: e for e, ch in enumerate(self.chords)}
        for s in range(n):
            idx.setdefault(_side_chord(s, n), self.side_edge(s))
        return idx

    def trace(self, coords) -> list[W.Word]:
        """Words of the components of the normal multicurve with these coordinates."""
        self.check_local(coords)
        n = self._sides
        rg = self.surface.ribbon
        ci = self.chord_index
        weight = {ch: coords[e] for ch, e in ci.items()}
        inside: dict[tuple, list[tuple]] = {}

        def link(p, q):
            inside.setdefault(p, []).append(q)
            inside.setdefault(q, []).append(p)

        for j in range(1, n - 1):
            ab, bc, ac = (0, j), (j, j + 1), (0, j + 1)
            wab, wbc, wac = weight[ab], weight[bc], weight[ac]
            for t in range((wab + wac - wbc) // 2):
                link((ab, t), (ac, t))
            for t in range((wab + wbc - wac) // 2):
                link((ab, wab - 1 - t), (bc, t))
            for t in range((wac + wbc - wab) // 2):
                link((ac, wac - 1 - t), (bc, wbc - 1 - t))

        def side_point(s: int, t_ccw: int) -> tuple:
            ch = _side_chord(s, n)
            return (ch, t_ccw if s < n - 1 else weight[ch] - 1 - t_ccw)

        glue: dict[tuple, tuple] = {}
        side_of: dict[tuple, int] = {}
        for s in range(n):
            s2 = self.side_partner[s]
            w = weight[_side_chord(s, n)]
            for t in range(w):
                p = side_point(s, t)
                glue[p] = side_point(s2, w - 1 - t)
                side_of[p] = s

        seen: set = set()
        comps: list[W.Word] = []
        for p0 in sorted(side_of):
            if p0 in seen:
                continue
            word: list[int] = []
            p = p0
            while True:
                seen.add(p)
                prev, cur = p, inside[p][0]
                while cur not in side_of:
                    nxt = [q for q in inside[cur] if q != prev]
                    prev, cur = cur, nxt[0]
                seen.add(cur)
                word.append(rg.order[side_of[cur]])
                p = glue[cur]
                if p == p0:
                    break
            comps.append(tuple(word))
        return comps

    def word_of(self, coords) -> W.Word:
        if len(coords) != self.n_edges:
            raise ValueError(f"expected {self.n_edges} coordinates, got {len(coords)}")
        if any(c < 0 for c in coords):
            raise CornerNegative("negative coordinate")
        comps = self.trace(coords)
        if not comps:
            raise NullHomotopic("zero vector")
        if len(comps) > 1:
            raise Disconnected(f"{len(comps)} components")
        w = W.cyclic_reduce(comps[0])
        if not w:
            raise NullHomotopic("trivial loop")
        if W.canonical(w) in self.surface.ribbon.peripheral_classes:
            raise Peripheral(W.to_string(w))
        return w


def _side_chord(s: int, n: int) -> tuple[int, int]:
    return (s, s + 1) if s < n - 1 else (0, n - 1)


def reference_triangulation(surface: Surface) -> Triangulation:
    return _reference(surface)


_CACHE: dict[Surface, Triangulation] = {}


def _reference(surface: Surface) -> Triangulation:
    if surface in _CACHE:
        return _CACHE[surface]
    surface.require_kernel()
    rg = surface.ribbon
    r = rg.rank
    n = 2 * r
    chords: list[tuple[int, int]] = [None] * r  # type: ignore[list-item]
    for s in range(n):
        e = abs(rg.order[s]) - 1
        ch = (s, s + 1) if s < n - 1 else (0, n - 1)
        if chords[e] is None:
            chords[e] = ch
    side_chords = {ch for ch in chords}
    # each loop edge is one edge of the surface but two polygon sides; keep the
    # first side as its chord and remember the pairing separately
    diag = [(0, k) for k in range(2, n - 1)]
    chords_all = list(chords) + diag
    index = {ch: e for e, ch in enumerate(chords_all)}
    for s in range(n):
        ch = (s, s + 1) if s < n - 1 else (0, n - 1)
        if ch not in index:
            index[ch] = abs(rg.order[s]) - 1
    triangles = []
    for j in range(1, n - 1):
        triangles.append((index[(0, j)], index[(j, j + 1)], index[(0, j + 1)]))
    partner = tuple(rg.position[-rg.order[s]] for s in range(n))
    del side_chords
    t = Triangulation(surface, tuple(triangles), tuple(chords_all), partner)
    _CACHE[surface] = t
    return t

"""Crossings of closed geodesics read off from cyclic words.

Lifts of two cyclically reduced words to the universal cover (a planar tree)
are bi-infinite lines.  Two lines cross exactly when their ends are linked on
the circle at infinity; for lines through a common vertex this is decided from
the cyclic order of half-edges where they diverge.  Counting linked pairs over
one period of each word gives the geometric intersection number, and the same
data drives Dehn-twist surgery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .surface import RibbonGraph
from . import words as W


@dataclass(frozen=True)
class Crossing:
    i: int  # vertex index on the first word where the shared segment starts
    j: int  # matching index on the partner word
    k: int  # length of the shared segment (0: lines cross at a single vertex)
    sign: int  # +1 / -1, orientation of (first, partner) at the crossing
    partner: W.Word  # the second word, or its inverse, running alongside


class SameAxis(Exception):
    pass


def _linked_at(a: W.Word, b: W.Word, i: int, j: int, rg: RibbonGraph, allow_point: bool, cap: int):
    p, q = len(a), len(b)
    xa, sa = -a[i - 1], a[i % p]
    xb, sb = -b[j - 1], b[j % q]
    if xa == xb:
        return None
    if sa == sb:
        k = 1
        while a[(i + k) % p] == b[(j + k) % q]:
            k += 1
            if k > cap:
                raise SameAxis
        t = -a[(i + k - 1) % p]
        ya, yb = a[(i + k) % p], b[(j + k) % q]
        s0 = rg.cyclic_sign(sa, xa, xb)
        sk = rg.cyclic_sign(t, ya, yb)
        if s0 == sk:
            return Crossing(i, j, k, s0, b)
        return None
    if not allow_point or sa == xb or sb == xa:
        return None
    if rg.cyclic_sign(xa, xb, sa) != rg.cyclic_sign(xa, sb, sa):
        return Crossing(i, j, 0, rg.cyclic_sign(xa, xb, sa), b)
    return None


def crossings(a: W.Word, b: W.Word, rg: RibbonGraph, self_pairs: bool = False) -> list[Crossing]:
    """All crossings between lifts of ``a`` and ``b``, one per orbit.

    With ``self_pairs`` the diagonal (a line with itself) is skipped; ``a`` and
    ``b`` are then the same word and each self-crossing appears twice.
    """
    out = []
    cap = len(a) + len(b) + 1
    binv = W.inverse(b)
    for partner, allow_point in ((b, True), (binv, False)):
        for i in range(len(a)):
            for j in range(len(partner)):
                if self_pairs and partner is b and i == j:
                    continue
                c = _linked_at(a, partner, i, j, rg, allow_point, cap)
                if c is not None:
                    out.append(Crossing(c.i, c.j, c.k, c.sign, partner))
    return out


def count_crossings(a: W.Word, b: W.Word, rg: RibbonGraph, limit: int | None = None) -> int:
    """Number of crossings (as in :func:`crossings`), stopping early at ``limit``."""
    pos = rg.position
    n = len(rg.order)
    p, q = len(a), len(b)
    cap = p + q + 1
    total = 0
    binv = W.inverse(b)
    starts: dict[int, list[int]] = {}
    for j, x in enumerate(binv):
        starts.setdefault(x, []).append(j)
    for partner, allow_point in ((b, True), (binv, False)):
        for i in range(p):
            xa, sa = pos[-a[i - 1]], a[i]
            psa = pos[sa]
            for j in (range(q) if allow_point else starts.get(sa, ())):
                xb = pos[-partner[j - 1]]
                if xa == xb:
                    continue
                sb = partner[j]
                if sa == sb:
                    k = 1
                    while a[(i + k) % p] == partner[(j + k) % q]:
                        k += 1
                        if k > cap:
                            raise SameAxis
                    t = pos[-a[(i + k - 1) % p]]
                    ya, yb = pos[a[(i + k) % p]], pos[partner[(j + k) % q]]
                    s0 = (xa - psa) % n < (xb - psa) % n
                    sk = (ya - t) % n < (yb - t) % n
                    if s0 != sk:
                        continue
                else:
                    psb = pos[sb]
                    if not allow_point or psa == xb or psb == xa:
                        continue
                    if ((xb - xa) % n < (psa - xa) % n) == ((psb - xa) % n < (psa - xa) % n):
                        continue
                total += 1
                if limit is not None and total >= limit:
                    return total
    return total


def intersection(a: W.Word, b: W.Word, rg: RibbonGraph) -> int:
    if not a or not b:
        return 0
    if W.canonical(a) == W.canonical(b):
        return 0
    try:
        return count_crossings(a, b, rg)
    except SameAxis:
        return 0


def intersection_capped(a: W.Word, b: W.Word, rg: RibbonGraph, cap: int) -> int:
    """min(i(a, b), cap), stopping as soon as ``cap`` crossings are seen."""
    if not a or not b or W.canonical(a) == W.canonical(b):
        return 0
    try:
        return count_crossings(a, b, rg, limit=cap)
    except SameAxis:
        return 0


def intersects(a: W.Word, b: W.Word, rg: RibbonGraph) -> bool:
    if not a or not b:
        return False
    ra, rb = W.cyclic_reduce(a), W.cyclic_reduce(b)
    if len(ra) == len(rb) and W.canonical(ra) == W.canonical(rb):
        return False
    try:
        return count_crossings(a, b, rg, limit=1) > 0
    except SameAxis:
        return False


def self_intersection(a: W.Word, rg: RibbonGraph) -> int:
    if not a:
        return 0
    return len(crossings(a, a, rg, self_pairs=True)) // 2


# --- ends of rays in the universal cover ------------------------------------


class Ray:
    """An eventually periodic reduced infinite word ``head + tail^inf``."""

    __slots__ = ("head", "tail", "_seq")

    def __init__(self, head: W.Word, tail: W.Word):
        self.head = head
        self.tail = tail
        self._seq: W.Word = head

    def letter(self, n: int) -> int:
        h = len(self.head)
        if n < h:
            return self.head[n]
        return self.tail[(n - h) % len(self.tail)]

    def prefix(self, n: int) -> W.Word:
        """The first ``n`` letters (or more)."""
        if len(self._seq) < n:
            reps = (n - len(self.head)) // len(self.tail) + 2
            self._seq = self.head + self.tail * reps
        return self._seq


def _mismatch(x: W.Word, y: W.Word, start: int, stop: int) -> int:
    """First index in ``[start, stop)`` where ``x`` and ``y`` differ, else ``stop``."""
    n, step = start, 32
    while n < stop:
        m = min(n + step, stop)
        if x[n:m] != y[n:m]:
            while x[n] == y[n]:
                n += 1
            return n
        n = m
        step *= 2
    return stop


def _compare_in_sector(r1: Ray, r2: Ray, start: int, h_in: int, rg: RibbonGraph, cap: int) -> int:
    """-1 if ``r1`` precedes ``r2`` counterclockwise below a vertex entered via ``h_in``."""
    stop = max(cap, start) + 1
    x, y = r1.prefix(stop + 1), r2.prefix(stop + 1)
    n = _mismatch(x, y, start, stop)
    if n == stop:
        return 0
    if n > start:
        h_in = -x[n - 1]
    return -1 if rg.cyclic_sign(h_in, x[n], y[n]) == 1 else 1


def cyclic_order(r1: Ray, r2: Ray, r3: Ray, rg: RibbonGraph) -> int:
    """+1 if the ends of three rays from one vertex are counterclockwise."""
    cap = max(len(r.head) for r in (r1, r2, r3)) + 2 * max(len(r.tail) for r in (r1, r2, r3)) + 4
    s1, s2, s3 = (r.prefix(cap + 2) for r in (r1, r2, r3))
    n = min(_mismatch(s1, s2, 0, cap + 1), _mismatch(s1, s3, 0, cap + 1))
    if n > cap:
        return 0
    h_in = -s1[n - 1] if n > 0 else None
    f1, f2, f3 = s1[n], s2[n], s3[n]
    if len({f1, f2, f3}) == 3:
        if h_in is None:
            return rg.cyclic_sign(f1, f2, f3)
        # all three below h_in: linear order from h_in
        key = lambda f: (rg.position[f] - rg.position[h_in]) % len(rg.order)
        ks = [key(f1), key(f2), key(f3)]
        return 1 if (ks[0] < ks[1] < ks[2] or ks[1] < ks[2] < ks[0] or ks[2] < ks[0] < ks[1]) else -1

    def pos(f: int) -> int:
        if h_in is None:
            return rg.position[f]
        return (rg.position[f] - rg.position[h_in]) % len(rg.order)

    def lin(x: Ray, y: Ray) -> int:
        if x.letter(n) != y.letter(n):
            return -1 if pos(x.letter(n)) < pos(y.letter(n)) else 1
        return _compare_in_sector(x, y, n + 1, -x.letter(n), rg, cap)

    rays = [r1, r2, r3]
    if h_in is None:
        # rotate so that a ray with a unique first letter breaks the circle
        firsts = [f1, f2, f3]
        for idx in range(3):
            if firsts.count(firsts[idx]) == 1:
                lone = idx
                break
        others = [x for x in range(3) if x != lone]
        a_, b_ = others
        c = lin(rays[a_], rays[b_])
        # order: lone, then the pair in ccw order
        seq = [lone, a_, b_] if c < 0 else [lone, b_, a_]
        return 1 if _is_cyclic_shift(seq, [0, 1, 2]) else -1
    ordered = sorted(range(3), key=cmp_to_key(lambda x, y: lin(rays[x], rays[y])))
    return 1 if _is_cyclic_shift(ordered, [0, 1, 2]) else -1


def _is_cyclic_shift(seq: list[int], ref: list[int]) -> bool:
    return any(seq[s:] + seq[:s] == ref for s in range(3))


# --- Dehn twist surgery -------------------------------------------------------


def _ray_from(prefix: list[int], tail: W.Word) -> Ray:
    m = len(prefix) // len(tail) + 2
    return Ray(W.reduce(list(prefix) + list(tail) * m), tail)


def _path_to(a: W.Word, start: int) -> list[int]:
    p = len(a)
    if start >= 0:
        return [a[t % p] for t in range(start)]
    return [-a[t % p] for t in range(-1, start - 1, -1)]


def twist_word(a: W.Word, c: W.Word, n: int, rg: RibbonGraph) -> W.Word:
    """The word of ``T_c^n(a)`` for a simple closed curve ``c``.

    At every crossing of ``a`` with a lift of ``c`` the loop ``c^(+-n)`` is
    spliced in, the sign chosen by the crossing orientation so that every
    splice turns the same way.
    """
    if n == 0 or not a:
        return a
    if W.canonical(a) == W.canonical(c):
        return a
    cr = crossings(a, c, rg)
    if not cr:
        return a
    p, m = len(a), len(cr)
    margin = 2 * (p + len(c)) + 2
    shifts = range(-(margin // p) - 2, (margin // p) + 3)
    alpha_plus = Ray((), a)

    sample = []
    for idx, x in enumerate(cr):
        w = x.partner
        rot = w[x.j :] + w[: x.j]
        for s in shifts:
            start = x.i + s * p
            pre = _path_to(a, start)
            fwd = _ray_from(pre, rot)
            bwd = _ray_from(pre, W.inverse(rot))
            sample.append((idx, s, start, x, fwd, bwd))

    def before(X, Y) -> int:
        _, _, _, _, fx, bx = X
        _, _, _, _, fy, _ = Y
        side_plus = cyclic_order(fx, alpha_plus, bx, rg)
        side_y = cyclic_order(fx, fy, bx, rg)
        # X is crossed first when Y lies on the far side of X, with alpha+.
        return -1 if side_plus == side_y else 1

    sample.sort(key=cmp_to_key(before))
    first = next(t for t, X in enumerate(sample) if X[0] == 0 and X[1] == 0)
    block = sample[first : first + m]
    assert sorted(X[0] for X in block) == list(range(m)), "crossing order is not periodic"

    out: list[int] = []
    u0 = block[0][2]
    cur = u0
    for _, _, start, x, _, _ in block:
        u = max(start, cur)
        assert u <= start + x.k, "crossing order incompatible with shared segments"
        out.extend(a[t % p] for t in range(cur, u))
        w = x.partner
        jj = (x.j + (u - start)) % len(w)
        out.extend(W.power(w[jj:] + w[:jj], -x.sign * n))
        cur = u
    assert cur <= u0 + p
    out.extend(a[t % p] for t in range(cur, u0 + p))
    return W.cyclic_reduce(out)

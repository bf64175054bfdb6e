"""Mapping-class equality on a filling battery, braid and commutation tests, bracelets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .complex import enumerate_curves
from .curves import Curve, disjoint, intersection_number, validate_curve
from .errors import NotPantsCurve, TruncationExhausted, WrongComplexity
from .mapping import MappingClass, halftwist, is_pants_curve, twist
from .reports import FAIL, INCONCLUSIVE, PASS, Report
from .surface import Surface
from .triangulation import reference_triangulation
from . import words as W


@dataclass(frozen=True)
class FillingBattery:
    """Test curves for deciding equality of mapping classes by their action.

    Oriented images are compared, so orientation-reversing ambiguities (such as a
    hyperelliptic involution) are still detected.
    """

    surface: Surface
    curves: tuple[Curve, ...]
    W_fill: int

    def image(self, f: MappingClass) -> tuple[W.Word, ...]:
        return tuple(W.oriented_canonical(f.act(c.word)) for c in self.curves)

    def fills(self) -> bool:
        return all(
            any(not disjoint(c, b) for b in self.curves) for c in enumerate_curves(self.surface, self.W_fill)
        )


@lru_cache(maxsize=None)
def filling_battery(surface: Surface, W_fill: int = 0) -> FillingBattery:
    """All curves of the smallest weight bound whose set fills up to ``W_fill``.

    ``W_fill`` defaults to twice the battery bound.
    """
    surface.require_kernel()
    lo = min(c.weight for c in enumerate_curves(surface, 4 * surface.rank + 8))
    for bound in range(lo, lo + 40, 2):
        curves = enumerate_curves(surface, bound)
        B = FillingBattery(surface, curves, W_fill or 2 * bound)
        if len(curves) >= 2 and B.fills():
            return B
    raise TruncationExhausted(f"no filling battery for {surface}")


def mc_equal(f: MappingClass, g: MappingClass, B: FillingBattery | None = None) -> bool:
    if f.surface != g.surface:
        raise ValueError("mapping classes live on different surfaces")
    B = B or filling_battery(f.surface)
    return B.image(f) == B.image(g)


def identity(surface: Surface) -> MappingClass:
    return MappingClass(surface)


def commutator(f: MappingClass, g: MappingClass) -> MappingClass:
    return f @ g @ f.inverse() @ g.inverse()


def commute(f: MappingClass, g: MappingClass, B: FillingBattery | None = None) -> bool:
    return mc_equal(f @ g, g @ f, B)


def braid(f: MappingClass, g: MappingClass, B: FillingBattery | None = None) -> bool:
    return mc_equal(f @ g @ f, g @ f @ g, B)


def _relation_report(check, a, b, fa, fb, expect_commute, expect_braid, powers, B) -> Report:
    got_commute = all(commute(fa ** m, fb ** n, B) for m, n in powers)
    got_braid = braid(fa, fb, B)
    ok = got_commute == expect_commute and got_braid == expect_braid
    return Report(
        check,
        a.surface,
        {"a": str(a), "b": str(b), "powers": [list(p) for p in powers]},
        {"battery": len(B.curves), "W_fill": B.W_fill},
        PASS if ok else FAIL,
        [] if ok else [a.to_json(), b.to_json()],
        {
            "intersection": intersection_number(a, b),
            "commute": got_commute,
            "braid": got_braid,
            "expected_commute": expect_commute,
            "expected_braid": expect_braid,
        },
        "" if ok else "relation verdicts disagree with the intersection number",
    )


def braid_commute_check(a: Curve, b: Curve, powers=((1, 1), (2, 1), (1, -2)), B=None) -> Report:
    """Twist powers commute iff i(a, b) = 0; twists braid iff i(a, b) = 1."""
    B = B or filling_battery(a.surface)
    i = intersection_number(a, b)
    return _relation_report(
        "braid-commute", a, b, twist(a.surface, a.word), twist(b.surface, b.word),
        i == 0, i == 1, powers, B,
    )


def halftwist_check(a: Curve, b: Curve, powers=((1, 1), (2, 1)), B=None) -> Report:
    """Half-twists commute iff the pants curves are disjoint, braid iff they meet twice."""
    for c in (a, b):
        if not is_pants_curve(c.surface, c.word):
            raise NotPantsCurve(str(c))
    B = B or filling_battery(a.surface)
    i = intersection_number(a, b)
    r = _relation_report(
        "halftwist", a, b, halftwist(a.surface, a.word), halftwist(b.surface, b.word),
        i == 0, i == 2, powers, B,
    )
    square = mc_equal(halftwist(a.surface, a.word, 2), twist(a.surface, a.word), B)
    r.metrics["square_is_twist"] = square
    if not square:
        r.verdict = FAIL
        r.diagnosis = "half-twist squared differs from the twist"
    return r


def characterization_scan(surface: Surface, W_bound: int, max_i: int = 3, mode: str = "twist") -> Report:
    """Relation verdicts against intersection numbers on every universe pair with i <= max_i."""
    B = filling_battery(surface)
    curves = enumerate_curves(surface, W_bound)
    if mode == "halftwist":
        curves = tuple(c for c in curves if is_pants_curve(surface, c.word))
    check = braid_commute_check if mode == "twist" else halftwist_check
    counts: dict[int, int] = {}
    bad = []
    for x in range(len(curves)):
        for y in range(x + 1, len(curves)):
            a, b = curves[x], curves[y]
            i = intersection_number(a, b)
            if i > max_i:
                continue
            counts[i] = counts.get(i, 0) + 1
            r = check(a, b, B=B)
            if not r.passed:
                bad.append([str(a), str(b), i])
    return Report(
        f"characterization-{mode}",
        surface,
        {"max_i": max_i, "mode": mode},
        {"W": W_bound, "battery": len(B.curves)},
        FAIL if bad else PASS,
        bad,
        {"pairs_by_intersection": {str(k): counts[k] for k in sorted(counts)}, "mismatches": len(bad)},
    )


# --- bracelets ----------------------------------------------------------------------

def _bracelet_candidates(a: Curve, mode: str, W_bound: int) -> list[Curve]:
    s = a.surface
    if mode == "twist":
        return [b for b in enumerate_curves(s, W_bound) if b != a and intersection_number(a, b) == 1]
    if mode == "halftwist":
        if not is_pants_curve(s, a.word):
            raise NotPantsCurve(str(a))
        return [
            b
            for b in enumerate_curves(s, W_bound)
            if b != a and is_pants_curve(s, b.word) and intersection_number(a, b) == 2
        ]
    raise ValueError(f"unknown bracelet mode {mode!r}")


def bracelet_search(a: Curve, mode: str, W_bound: int) -> tuple[int, tuple[Curve, ...]]:
    """Largest set of pairwise disjoint curves each braiding with ``a``, and a witness.

    The witness is the canonically smallest clique of maximum size.
    """
    s = a.surface
    if mode == "twist" and s.genus == 1 and s.boundary_count == 0:
        raise WrongComplexity("bracelets are not considered on the closed torus")
    cands = _bracelet_candidates(a, mode, W_bound)
    G = nx.Graph()
    G.add_nodes_from(range(len(cands)))
    for x in range(len(cands)):
        for y in range(x + 1, len(cands)):
            if disjoint(cands[x], cands[y]):
                G.add_edge(x, y)
    best: tuple[int, ...] = ()
    for clique in nx.find_cliques(G):
        k = tuple(sorted(clique))
        if len(k) > len(best) or (len(k) == len(best) and k < best):
            best = k
    witness = tuple(cands[k] for k in best)
    return len(witness), witness


def certify_bracelet(a: Curve, witness, mode: str, B: FillingBattery | None = None) -> bool:
    """Re-validate a witness from its coordinates and check every relation by action."""
    s = a.surface
    T = reference_triangulation(s)
    B = B or filling_battery(s)
    make = twist if mode == "twist" else halftwist
    fa = make(s, a.word)
    maps = []
    for c in witness:
        if validate_curve(c.coords, T) != c or c == a:
            return False
        f = make(s, c.word)
        if not braid(fa, f, B) or mc_equal(fa, f, B):
            return False
        maps.append(f)
    return all(commute(maps[x], maps[y], B) for x in range(len(maps)) for y in range(x + 1, len(maps)))


def expected_bracelet(surface: Surface, mode: str) -> tuple[str, int]:
    """("==", 2g-2+b) for twists on non-separating curves, ("<=", 2) for half-twists."""
    if mode == "twist":
        return "==", 2 * surface.genus - 2 + surface.boundary_count
    return "<=", 2


def bracelet_report(a: Curve, mode: str, W_bound: int) -> Report:
    n, witness = bracelet_search(a, mode, W_bound)
    op, target = expected_bracelet(a.surface, mode)
    certified = certify_bracelet(a, witness, mode)
    if not certified:
        verdict = FAIL
    elif op == "<=":
        verdict = PASS if n <= target else FAIL
    elif n > target:
        verdict = FAIL
    else:
        verdict = PASS if n == target else INCONCLUSIVE
    return Report(
        "bracelet",
        a.surface,
        {"a": str(a), "mode": mode},
        {"W": W_bound},
        verdict,
        [c.to_json() for c in witness],
        {"bracelet_number": n, "expected": f"{op} {target}", "certified": certified},
        "" if verdict != INCONCLUSIVE else f"largest bracelet found at weight {W_bound} has {n} curves",
    )


__all__ = [
    "FillingBattery",
    "filling_battery",
    "mc_equal",
    "identity",
    "commutator",
    "commute",
    "braid",
    "braid_commute_check",
    "halftwist_check",
    "characterization_scan",
    "bracelet_search",
    "certify_bracelet",
    "expected_bracelet",
    "bracelet_report",
]

from __future__ import annotations

import random

import pytest

from curvecomplex.complex import universe
from curvecomplex.curves import Curve, disjoint, intersection_number
from curvecomplex.errors import BaseNotPants, TransversalNotMinimal, TransversalOutsideXa, WrongComplexity
from curvecomplex.marking import (
    Marking,
    Move,
    apply_move,
    complete_to_marking,
    elementary_moves,
    extend_past_point,
    is_valid,
    marking_cuts,
    marking_dZ,
    marking_local_distance,
    marking_projection,
    minimal_intersection,
    piece_type,
    random_marking,
    validate_marking,
)
from curvecomplex.projection import enumerate_subsurfaces
from curvecomplex.surface import Surface

S = Surface.parse("0,5")


def c(w, s=S):
    return Curve.parse(s, w)


def test_validate_good_marking():
    m = Marking.of([(c("ab"), c("bcd")), (c("cd"), c("abc"))])
    validate_marking(m)


def test_validate_errors():
    with pytest.raises(BaseNotPants):
        validate_marking(Marking.of([(c("ab"), c("bcd"))]))
    with pytest.raises(BaseNotPants):
        validate_marking(Marking.of([(c("ab"), c("bcd")), (c("bc"), c("abc"))]))
    with pytest.raises(TransversalOutsideXa):
        validate_marking(Marking.of([(c("ab"), c("bc")), (c("cd"), c("abc"))]))
    # a transversal meeting ab four times is not minimal
    with pytest.raises(TransversalNotMinimal):
        far = next(
            x for x in universe(S, 26).curves
            if disjoint(x, c("cd")) and x not in (c("ab"), c("cd")) and intersection_number(x, c("ab")) == 4
        )
        validate_marking(Marking.of([(c("ab"), far), (c("cd"), c("abc"))]))


def test_piece_types():
    T = Surface.parse("1,2")
    a = Curve.parse(T, "a")
    assert piece_type(a, []) == "torus" or piece_type(a, []) == "sphere"
    S11 = Surface.parse("1,1")
    assert minimal_intersection(Curve.parse(S11, "a"), []) == 1
    assert minimal_intersection(c("ab"), [c("cd")]) == 2


def test_serialization_round_trip():
    m = complete_to_marking(c("ab"), c("ab"), 24)
    d = m.to_json()
    assert set(d) == {"base", "transversals"}
    assert Marking.from_json(S, d) == m


@pytest.mark.parametrize("gb, word", [("0,5", "ab"), ("1,1", "a"), ("0,4", "ab"), ("1,2", "a"), ("0,6", "ab")])
def test_completion_and_moves_are_valid(gb, word):
    s = Surface.parse(gb)
    m = complete_to_marking(Curve.parse(s, word), Curve.parse(s, word), 24)
    assert is_valid(m) and Curve.parse(s, word) in m.base
    moves = elementary_moves(m, 24)
    assert {mv.tag for mv in moves} <= {"twist+", "twist-", "flip"}
    for m2 in moves.values():
        validate_marking(m2)


def test_twists_are_inverse():
    m = complete_to_marking(c("ab"), c("ab"), 24)
    for k in range(len(m.base)):
        up = apply_move(m, Move("twist+", k))
        assert apply_move(up, Move("twist-", k)) == m


def test_flip_swaps_base_and_transversal():
    m = complete_to_marking(c("ab"), c("ab"), 24)
    a, t = m.base[0], m.transversals[0]
    f = apply_move(m, Move("flip", 0), 24)
    assert t in f.base and f.transversal(t) == a


def test_local_distance_and_projection():
    m = complete_to_marking(c("ab"), c("ab"), 24)
    m2 = apply_move(m, Move("twist+", 0))
    assert marking_local_distance(m, m, 1) == 0
    assert marking_local_distance(m, m2, 1, 24) == 1
    assert marking_projection(m) in m.base


def test_elementary_moves_bound_dz():
    rng = random.Random(5)
    subs = enumerate_subsurfaces(S, 10)
    for _ in range(3):
        m = random_marking(S, rng, 22)
        for m2 in elementary_moves(m, 22).values():
            for Z in subs:
                if marking_cuts(m, Z) and marking_cuts(m2, Z):
                    assert marking_dZ(m, m2, Z) <= 4


def test_completion_needs_complexity():
    with pytest.raises(Exception):
        complete_to_marking(Curve.parse(Surface.parse("0,3"), "ab"), None, 10)


def test_extend_past_point():
    res = extend_past_point(c("ab"), c("bc"), 18)
    assert res.path.vertices[0] == c("bc") and res.path.is_valid()
    near = res.near
    assert near == c("ab") or disjoint(near, c("ab"))
    with pytest.raises(WrongComplexity):
        extend_past_point(Curve.parse(Surface.parse("1,1"), "a"), Curve.parse(Surface.parse("1,1"), "b"), 10)

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from curvecomplex.complex import (
    _escape_candidates,
    _escapes,
    PathInComplex,
    adjacent,
    ball,
    detour_search,
    distance_label,
    distance_upper,
    enumerate_curves,
    no_dead_ends_check,
    shell_connectivity,
    slimness_sample,
    universe,
)
from curvecomplex.curves import Curve, apply, compile_twist, disjoint, intersection_number
from curvecomplex.errors import NotFound, Unreachable, WrongComplexity
from curvecomplex.surface import Surface


@pytest.mark.parametrize("gb, W", [("0,5", 20), ("1,2", 12), ("0,4", 16), ("1,1", 14)])
def test_enumeration_is_sorted_and_bounded(gb, W):
    curves = enumerate_curves(Surface.parse(gb), W)
    keys = [(c.weight, c.coords) for c in curves]
    assert keys == sorted(keys) and len(set(curves)) == len(curves)
    assert all(c.weight <= W for c in curves)


def test_enumeration_is_closed_under_light_images(S05):
    # every twist image that stays under the bound must already be enumerated
    curves = set(enumerate_curves(S05, 18))
    for c in sorted(curves)[:8]:
        for a in sorted(curves):
            for n in (1, -1):
                b = apply(compile_twist(c, n), a)
                if b.weight <= 18:
                    assert b in curves


def test_adjacency_is_disjointness(S05):
    curves = enumerate_curves(S05, 16)
    for a in curves:
        for b in curves:
            if a != b:
                assert adjacent(a, b) == (intersection_number(a, b) == 0)


def test_universe_edges_are_symmetric(S05):
    U = universe(S05, 20)
    for j, row in enumerate(U.nbrs):
        for k in row:
            assert j in U.nbrs[k]


def test_ball_layers_are_bfs_layers(S05):
    z = Curve.parse(S05, "ab")
    B = ball(z, 3, 22)
    assert B.layers[0] == (z,)
    for k in range(1, 4):
        for c in B.layers[k]:
            assert any(adjacent(c, x) for x in B.layers[k - 1])
            assert not any(adjacent(c, x) for j in range(k - 1) for x in B.layers[j])


@given(st.data())
def test_distance_path_is_valid(data):
    S = Surface.parse("0,5")
    U = universe(S, 20)
    a, b = data.draw(st.sampled_from(U.curves)), data.draw(st.sampled_from(U.curves))
    d, path = distance_upper(a, b, 20)
    assert path.vertices[0] == a and path.vertices[-1] == b
    assert len(path) == d and path.is_valid()
    assert (d <= 1) == (a == b or disjoint(a, b))


def test_distance_label():
    S = Surface.parse("0,5")
    assert distance_label(2, S) == "exact"
    assert distance_label(3, S) == "upper-bound"


def test_unreachable_outside_universe(S05):
    heavy = apply(compile_twist(Curve.parse(S05, "bc"), 5), Curve.parse(S05, "ab"))
    with pytest.raises(Unreachable):
        distance_upper(Curve.parse(S05, "ab"), heavy, 14)


def test_path_serializes(S05):
    p = PathInComplex((Curve.parse(S05, "ab"), Curve.parse(S05, "cd")))
    assert p.to_json() == ["ab", "cd"] and p.length == 1


@pytest.mark.parametrize("r", [0, 1, 2])
def test_no_dead_ends_small(S05, r):
    rep = no_dead_ends_check(Curve.parse(S05, "ab"), r, 26, 32)
    assert rep.passed, rep.diagnosis


def test_escape_candidates_stay_within_two(S05):
    # at W 26 layer 4 is empty, so every layer-3 vertex needs a constructed escape
    U = universe(S05, 26)
    dist = U.distances(Curve.parse(S05, "ab"))
    j = U.index[Curve.parse(S05, "acAd")]
    a = U.curves[j]
    found = None
    for n, (via, make, how) in enumerate(_escape_candidates(U, j, dist)):
        mid = via if via is not None else Curve.parse(S05, how[0])
        x = make()
        assert disjoint(a, mid) and disjoint(mid, x)
        if _escapes(U, dist, 3, via, make, 8 * U.W, {}):
            found = x
            break
    assert found is not None
    # nothing below layer 3 is disjoint from the escape
    assert not any(adjacent(found, U.curves[k]) for k, d in enumerate(dist) if 0 <= d < 3)


def test_shell_is_connected(S05):
    rep = shell_connectivity(Curve.parse(S05, "ab"), 2, 1, 32)
    assert rep.verdict != "fail"
    assert rep.metrics["components"] == 1


def test_shell_rejects_farey(S11):
    with pytest.raises(WrongComplexity):
        shell_connectivity(Curve.parse(S11, "a"), 1, 1, 10)


def test_detour_avoids_ball(S05):
    z = Curve.parse(S05, "ab")
    B = ball(z, 3, 26)
    a, b = B.layers[2][0], B.layers[2][-1]
    path = detour_search(a, b, z, 2, 26)
    assert path.is_valid()
    assert all(B.layer_of(v) not in (0, 1) for v in path.vertices)


def test_detour_reports_failure(S05):
    z = Curve.parse(S05, "ab")
    a = ball(z, 1, 14).layers[1][0]
    with pytest.raises((NotFound, ValueError)):
        detour_search(a, a, z, 3, 14)


def test_slimness_is_small_and_deterministic(S05):
    r1 = slimness_sample(S05, 20, 10, seed=4)
    r2 = slimness_sample(S05, 20, 10, seed=4)
    assert r1 == r2
    assert 0 <= r1.delta <= 2

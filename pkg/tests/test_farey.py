from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from curvecomplex.complex import adjacent, no_dead_ends_check
from curvecomplex.errors import WrongComplexity
from curvecomplex.farey import (
    INF,
    Slope,
    curve_of_slope,
    farey_adjacent,
    farey_bfs_distance,
    farey_dead_ends,
    ladder,
    slope_distance,
    slope_of_curve,
    slopes_up_to,
)
from curvecomplex.surface import Surface

slopes = st.builds(Slope.of, st.integers(-30, 30), st.integers(1, 30))

# Distances from 0/1 computed by plain BFS over slopes with |p|, q <= 40, frozen.
BFS_FROM_ZERO = {
    "1/0": 1, "1/1": 1, "1/2": 1, "-1/3": 1, "2/5": 2, "3/7": 2,
    "5/13": 3, "-7/3": 3, "8/13": 3, "13/34": 4,
}


def test_serialization():
    assert str(Slope.of(2, -4)) == "-1/2"
    assert Slope.parse("3/6") == Slope(1, 2)
    assert Slope.parse("inf") == INF
    assert str(INF) == "1/0"


def test_adjacency_examples():
    assert farey_adjacent(Slope(0, 1), INF)
    assert farey_adjacent(Slope(1, 2), Slope(1, 3))
    assert not farey_adjacent(Slope(0, 1), Slope(2, 1))


@pytest.mark.parametrize("target, d", sorted(BFS_FROM_ZERO.items()))
def test_distance_against_frozen_bfs(target, d):
    assert slope_distance(Slope(0, 1), Slope.parse(target)) == d


def test_distance_matches_bfs_oracle():
    verts = slopes_up_to(6)
    for y in verts:
        assert slope_distance(Slope(1, 3), y) == farey_bfs_distance(Slope(1, 3), y, 12)


@given(slopes, slopes)
def test_distance_symmetric(x, y):
    assert slope_distance(x, y) == slope_distance(y, x)


@given(slopes, slopes, slopes)
def test_triangle_inequality(x, y, z):
    assert slope_distance(x, z) <= slope_distance(x, y) + slope_distance(y, z)


@given(slopes)
def test_ladder_is_a_path_of_triangles(y):
    L = ladder(y)
    assert L[0] == INF and y in L
    assert all(any(abs(v.det(w)) == 1 for w in L if w != v) for v in L)


def test_distance_requires_complexity_one():
    with pytest.raises(WrongComplexity):
        slope_distance(Slope(0, 1), INF, Surface.parse("0,5"))


@pytest.mark.parametrize("gb", ["1,1", "0,4"])
def test_slope_dictionary_round_trip(gb):
    S = Surface.parse(gb)
    for x in slopes_up_to(6):
        c = curve_of_slope(S, x)
        assert slope_of_curve(c) == x


@pytest.mark.parametrize("gb", ["1,1", "0,4"])
def test_kernel_adjacency_is_farey(gb):
    S = Surface.parse(gb)
    xs = slopes_up_to(4)
    cs = [curve_of_slope(S, x) for x in xs]
    for x, a in zip(xs, cs):
        for y, b in zip(xs, cs):
            if x != y:
                assert adjacent(a, b) == farey_adjacent(x, y)


@pytest.mark.parametrize("r", range(5))
def test_farey_has_no_dead_ends(r):
    assert farey_dead_ends(Slope(0, 1), r, 20).passed


def test_dead_end_check_dispatches_to_farey(S11):
    rep = no_dead_ends_check(curve_of_slope(S11, Slope(0, 1)), 2, 10)
    assert rep.passed and rep.parameters["graph"] == "farey"

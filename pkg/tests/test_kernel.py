from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from curvecomplex.complex import enumerate_curves
from curvecomplex.errors import (
    ComplexityTooLow,
    CornerNegative,
    Disconnected,
    NullHomotopic,
    ParityViolation,
    Peripheral,
)
from curvecomplex.farey import Slope, curve_of_slope, slope_of_curve
from curvecomplex.kernel import (
    Curve,
    MappingClass,
    Surface,
    apply,
    compile_twist,
    complexity,
    intersection_number,
    reference_triangulation,
    validate_curve,
)


@pytest.mark.parametrize("gb, xi", [("0,5", 2), ("1,1", 1), ("0,3", 0), ("2,0", 3), ("1,3", 3)])
def test_complexity(gb, xi):
    assert complexity(Surface.parse(gb)) == xi


@pytest.mark.parametrize("gb, tris, edges", [("1,1", 2, 3), ("0,5", 6, 9), ("0,4", 4, 6), ("1,2", 4, 6)])
def test_reference_triangulation_counts(gb, tris, edges):
    T = reference_triangulation(Surface.parse(gb))
    assert (T.n_triangles, T.n_edges) == (tris, edges)
    chi = 2 - 2 * T.surface.genus - T.surface.boundary_count
    assert T.euler_characteristic() == chi
    assert T.puncture_count() == T.surface.boundary_count


def test_reference_triangulation_rejects_low_complexity():
    with pytest.raises(ComplexityTooLow):
        reference_triangulation(Surface.parse("0,3"))


def test_triangulation_is_deterministic(S05):
    assert reference_triangulation(S05).fingerprint == reference_triangulation(Surface.parse("0,5")).fingerprint


@pytest.mark.parametrize(
    "coords, err",
    [
        ((3, 1, 1), ParityViolation),
        ((4, 1, 1), CornerNegative),
        ((2, 2, 0), Disconnected),
        ((0, 0, 0), NullHomotopic),
        ((2, 2, 2), Peripheral),
    ],
)
def test_validate_curve_errors(S11, coords, err):
    with pytest.raises(err):
        validate_curve(coords, reference_triangulation(S11))


def test_validate_curve_locally_valid_triangle(S11):
    c = validate_curve((2, 1, 1), reference_triangulation(S11))
    assert c.coords == (2, 1, 1)


def test_peripheral_loop_on_sphere(S04):
    with pytest.raises(Peripheral):
        validate_curve((0, 0, 1, 0, 0, 0), reference_triangulation(S04))


@pytest.mark.parametrize("gb, W", [("1,1", 12), ("0,4", 14), ("0,5", 16), ("1,2", 10)])
def test_coordinates_round_trip(gb, W):
    S = Surface.parse(gb)
    T = reference_triangulation(S)
    for c in enumerate_curves(S, W):
        assert validate_curve(c.coords, T) == c
        assert Curve.from_json(S, c.to_json()) == c


def test_intersection_examples(S11):
    a, b = curve_of_slope(S11, Slope(0, 1)), curve_of_slope(S11, Slope(1, 0))
    assert intersection_number(a, b) == 1
    assert intersection_number(a, a) == 0
    x, y = curve_of_slope(S11, Slope(1, 2)), curve_of_slope(S11, Slope(1, 3))
    assert intersection_number(x, y) == abs(1 * 3 - 2 * 1)


def test_intersection_matches_determinant(S11):
    slopes = [Slope.of(p, q) for p in range(-4, 5) for q in range(1, 5)] + [Slope(1, 0)]
    slopes = sorted(set(slopes))
    curves = [curve_of_slope(S11, x) for x in slopes]
    for x, a in zip(slopes, curves):
        for y, b in zip(slopes, curves):
            assert intersection_number(a, b) == abs(x.det(y))


def test_identity_and_inverse(S05):
    e = MappingClass(S05)
    c = compile_twist(Curve.parse(S05, "bc"), 3)
    for a in enumerate_curves(S05, 14):
        assert apply(e, a) == a
        assert apply(c.inverse(), apply(c, a)) == a


@given(st.integers(-6, 6))
def test_twist_on_slopes(n):
    # T about 1/0 sends 0/1 to a slope meeting 0/1 exactly |n| times
    S = Surface.parse("1,1")
    a, c = curve_of_slope(S, Slope(0, 1)), curve_of_slope(S, Slope(1, 0))
    image = apply(compile_twist(c, n), a)
    assert intersection_number(image, a) == abs(n)
    assert abs(slope_of_curve(image).det(Slope(1, 0))) == 1


def test_twist_fixes_core(S05):
    for c in enumerate_curves(S05, 16):
        assert apply(compile_twist(c, 2), c) == c


@given(st.data())
def test_twist_identity_property(data):
    S = Surface.parse(data.draw(st.sampled_from(["1,1", "0,5", "1,2"])))
    curves = enumerate_curves(S, 12)
    a, c = data.draw(st.sampled_from(curves)), data.draw(st.sampled_from(curves))
    n = data.draw(st.integers(-4, 4))
    assert intersection_number(apply(compile_twist(c, n), a), a) == abs(n) * intersection_number(a, c) ** 2


@given(st.data())
def test_intersection_is_symmetric_and_natural(data):
    S = Surface.parse("0,5")
    curves = enumerate_curves(S, 16)
    a, b, c = (data.draw(st.sampled_from(curves)) for _ in range(3))
    f = compile_twist(c, data.draw(st.sampled_from([-1, 1])))
    assert intersection_number(a, b) == intersection_number(b, a)
    assert intersection_number(apply(f, a), apply(f, b)) == intersection_number(a, b)

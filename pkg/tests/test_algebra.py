from __future__ import annotations

import pytest

from curvecomplex.algebra import (
    bracelet_report,
    bracelet_search,
    braid,
    braid_commute_check,
    certify_bracelet,
    commutator,
    commute,
    expected_bracelet,
    filling_battery,
    halftwist_check,
    identity,
    mc_equal,
)
from curvecomplex.curves import Curve
from curvecomplex.errors import NotPantsCurve
from curvecomplex.mapping import halftwist, twist
from curvecomplex.surface import Surface


def test_battery_fills(S11, S05):
    for s in (S11, S05):
        B = filling_battery(s)
        assert B.fills() and len(B.curves) >= 2


def test_equality_basics(S11):
    Ta, Tb = twist(S11, Curve.parse(S11, "a").word), twist(S11, Curve.parse(S11, "b").word)
    assert mc_equal(Ta, Ta)
    assert not mc_equal(Ta, Ta ** 2)
    assert mc_equal(Ta @ Ta.inverse(), identity(S11))
    assert not mc_equal(commutator(Ta, Tb), identity(S11))
    assert braid(Ta, Tb) and not commute(Ta, Tb)


def test_torus_relation(S11):
    # (T_a T_b)^6 is the identity on the once-punctured torus
    Ta, Tb = twist(S11, Curve.parse(S11, "a").word), twist(S11, Curve.parse(S11, "b").word)
    assert mc_equal((Ta @ Tb) ** 6, identity(S11))
    assert not mc_equal((Ta @ Tb) ** 3, identity(S11))


@pytest.mark.parametrize("x, y, i", [("a", "b", 1), ("a", "ab", 1), ("a", "aab", 1), ("ab", "aBB", 3)])
def test_braid_commute_on_torus(S11, x, y, i):
    r = braid_commute_check(Curve.parse(S11, x), Curve.parse(S11, y))
    assert r.passed and r.metrics["intersection"] == i


def test_disjoint_twists_commute(S05):
    r = braid_commute_check(Curve.parse(S05, "ab"), Curve.parse(S05, "cd"))
    assert r.passed and r.metrics["commute"] and not r.metrics["braid"]


def test_halftwists(S05):
    r = halftwist_check(Curve.parse(S05, "ab"), Curve.parse(S05, "bc"))
    assert r.passed and r.metrics["braid"] and r.metrics["square_is_twist"]
    r = halftwist_check(Curve.parse(S05, "ab"), Curve.parse(S05, "cd"))
    assert r.passed and r.metrics["commute"]
    S06 = Surface.parse("0,6")
    with pytest.raises(NotPantsCurve):
        halftwist_check(Curve.parse(S06, "abc"), Curve.parse(S06, "ab"))


def test_halftwist_square(S05):
    a = Curve.parse(S05, "ab")
    assert mc_equal(halftwist(S05, a.word, 2), twist(S05, a.word))
    assert not mc_equal(halftwist(S05, a.word), twist(S05, a.word))


def test_expected_bracelets():
    assert expected_bracelet(Surface.parse("1,2"), "twist") == ("==", 2)
    assert expected_bracelet(Surface.parse("1,3"), "twist") == ("==", 3)
    assert expected_bracelet(Surface.parse("0,6"), "halftwist") == ("<=", 2)


def test_bracelet_twice_punctured_torus(S12):
    a = Curve.parse(S12, "a")
    n, witness = bracelet_search(a, "twist", 10)
    assert n == 2 and certify_bracelet(a, witness, "twist")
    assert bracelet_report(a, "twist", 10).passed


def test_bracelet_six_punctured_sphere():
    s = Surface.parse("0,6")
    r = bracelet_report(Curve.parse(s, "ab"), "halftwist", 12)
    assert r.passed and 1 <= r.metrics["bracelet_number"] <= 2


def test_certify_rejects_bad_witness(S12):
    a = Curve.parse(S12, "a")
    _, witness = bracelet_search(a, "twist", 10)
    assert not certify_bracelet(a, (a,) + witness, "twist")

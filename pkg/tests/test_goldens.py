from __future__ import annotations

import json
from pathlib import Path

import pytest

from curvecomplex.complex import ball, enumerate_curves
from curvecomplex.curves import Curve
from curvecomplex.projection import enumerate_subsurfaces
from curvecomplex.surface import Surface

GOLDENS = json.loads((Path(__file__).parent / "goldens" / "goldens.json").read_text())


@pytest.mark.parametrize("key", sorted(GOLDENS["universe_sizes"]))
def test_universe_size(key):
    gb, W = key.split("|")
    assert len(enumerate_curves(Surface.parse(gb), int(W))) == GOLDENS["universe_sizes"][key]


@pytest.mark.parametrize("key", sorted(GOLDENS["ball_layers"]))
def test_ball_layers(key):
    gb, word, r, W = key.split("|")
    S = Surface.parse(gb)
    assert ball(Curve.parse(S, word), int(r), int(W)).sizes == GOLDENS["ball_layers"][key]


@pytest.mark.parametrize("key", sorted(GOLDENS["subsurface_counts"]))
def test_subsurface_counts(key):
    gb, W = key.split("|")
    subs = enumerate_subsurfaces(Surface.parse(gb), int(W))
    got = {"annular": sum(Z.is_annular for Z in subs), "nonannular": sum(not Z.is_annular for Z in subs)}
    assert got == GOLDENS["subsurface_counts"][key]

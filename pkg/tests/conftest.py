from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from curvecomplex.surface import Surface

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def S11():
    return Surface.parse("1,1")


@pytest.fixture(scope="session")
def S04():
    return Surface.parse("0,4")


@pytest.fixture(scope="session")
def S05():
    return Surface.parse("0,5")


@pytest.fixture(scope="session")
def S12():
    return Surface.parse("1,2")

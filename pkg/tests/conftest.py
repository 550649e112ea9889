import random

import pytest

from cavex import curve as curve_mod


@pytest.fixture
def rng():
    return random.Random(20260808)


@pytest.fixture(scope="session")
def registry_curves():
    return {name: curve_mod.registry_curve(name) for name in curve_mod.registry_names()}


def interior_points(cur, n, rng, margin=0.05):
    """Random points away from the domain edges (finite differences need
    room on both sides, and near-vertical boundary slopes would swamp
    the difference quotient)."""
    lo = cur.a + margin * (cur.b - cur.a)
    hi = cur.b - margin * (cur.b - cur.a)
    return [rng.uniform(lo, hi) for _ in range(n)]

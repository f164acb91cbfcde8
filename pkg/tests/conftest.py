import pytest

from coarsetiler.automaton import load_preset
from coarsetiler.cayley import build_ball


@pytest.fixture(scope="session")
def grig():
    return load_preset("grigorchuk")


@pytest.fixture(scope="session")
def fg():
    return load_preset("fabrykowski-gupta")


@pytest.fixture(scope="session")
def ball_of(grig, fg):
    """Cached ball builder shared by the whole run; balls are immutable."""
    specs = {"grigorchuk": grig, "fabrykowski-gupta": fg}
    cache = {}

    def build(preset: str, radius: int):
        key = (preset, radius)
        if key not in cache:
            cache[key] = build_ball(specs[preset], radius)
        return cache[key]

    return build

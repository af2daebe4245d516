import pytest

from pegboard.curves import build_zoo, zoo_names


@pytest.fixture(scope="session")
def zoo():
    return {name: build_zoo(name) for name in zoo_names()}


@pytest.fixture(scope="session")
def staircases(zoo):
    return {k: zoo[k] for k in ("trefoil", "torus_2_5", "torus_3_4")}

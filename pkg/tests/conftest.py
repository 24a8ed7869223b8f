from __future__ import annotations

from functools import lru_cache

import pytest

from orbitypes.scenario import BUILTIN_EXAMPLES, build_action, example


@lru_cache(maxsize=None)
def built(name: str):
    return build_action(example(name))


SMALL_EXAMPLES = [n for n in BUILTIN_EXAMPLES if not n.startswith("product")]


@pytest.fixture(scope="session")
def rs5():
    return built("rotation_sphere(5)")


@pytest.fixture(scope="session")
def dih3():
    return built("dihedral_polygon(3)")


@pytest.fixture(scope="session")
def torus():
    return built("product(rotation_sphere(3),rotation_sphere(4))")

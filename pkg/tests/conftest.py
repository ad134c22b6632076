"""Shared reference fans, built once per session.

Two three-dimensional families recur throughout the suite.  The first is a
pair of fans on six rays differing by one diagonal: the coarse fan has a
square-based cone that the fine fan splits in two.  The second tilts one
ray, producing a fan whose blow-up at (0,0,-1) carries a Cartier divisor
meeting curves with both signs.
"""

import pytest

from toricone import fan as fn

KLEIMAN_RAYS = [
    (1, 0, 1), (0, 1, 1), (-1, -1, 1),
    (1, 0, -1), (0, 1, -1), (-1, -1, -1),
]
FINE_CONES = [[0, 1, 3], [1, 3, 4], [1, 2, 4, 5], [0, 2, 3, 5], [0, 1, 2], [3, 4, 5]]
COARSE_CONES = [[0, 1, 3, 4], [1, 2, 4, 5], [0, 2, 3, 5], [0, 1, 2], [3, 4, 5]]

FAMILY_RAYS = [
    (1, 0, 1), (0, 1, 1), (-1, -2, 1),
    (1, 0, -1), (0, 1, -1), (-1, -1, -1),
]
BASE_CONES = [[0, 1, 3, 4], [1, 2, 4, 5], [0, 2, 3, 5], [0, 1, 2], [3, 4, 5]]
BLOWUP_RAYS = FAMILY_RAYS + [(0, 0, -1)]
BLOWUP_CONES = [
    [0, 1, 3, 4], [1, 2, 4, 5], [0, 2, 3, 5], [0, 1, 2],
    [3, 4, 6], [3, 5, 6], [4, 5, 6],
]

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
P2_CONES = [[0, 1], [1, 2], [0, 2]]


@pytest.fixture(scope="session")
def p2():
    return fn.build_fan(2, P2_RAYS, P2_CONES)


@pytest.fixture(scope="session")
def fine_fan():
    return fn.build_fan(3, KLEIMAN_RAYS, FINE_CONES)


@pytest.fixture(scope="session")
def coarse_fan():
    return fn.build_fan(3, KLEIMAN_RAYS, COARSE_CONES)


@pytest.fixture(scope="session")
def base_fan():
    return fn.build_fan(3, FAMILY_RAYS, BASE_CONES)


@pytest.fixture(scope="session")
def blowup_fan():
    return fn.build_fan(3, BLOWUP_RAYS, BLOWUP_CONES)


@pytest.fixture(scope="session")
def p1():
    return fn.build_fan(1, [(1,), (-1,)], [[0], [1]])


@pytest.fixture(scope="session")
def p112():
    return fn.build_fan(2, [(1, 0), (0, 1), (-1, -2)], [[0, 1], [1, 2], [0, 2]])


def hirzebruch(a: int):
    """Smooth ruled surface fan; the ray (-1, a) twists the ruling."""
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return fn.build_fan(2, rays, [[0, 1], [1, 2], [2, 3], [3, 0]])

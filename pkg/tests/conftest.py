import math

import numpy as np
import pytest

from trigsolve.core import Mat2, TrigSystem, Vec2

# worked examples: generic B, zero B, rank-one B
GENERIC = TrigSystem.of([[1.0, 0.5], [0.5, 1.0]], [[0.8, 0.3], [0.3, 0.8]], [1.2, 1.0])
GENERIC_PAIRS = [(1.487, -0.404), (-0.313, 1.439)]

ZERO_B = TrigSystem.of([[1.0, 0.0], [0.0, 1.0]], [[0.0, 0.0], [0.0, 0.0]], [math.sqrt(2) / 2, math.sqrt(2) / 2])

RANK1 = TrigSystem.of([[0.6, 0.2], [0.2, 0.6]], [[1.0, 0.5], [2.0, 1.0]], [0.8, 1.0])
RANK1_PAIRS = [(0.744, 1.833), (0.744, -0.906), (-1.139, 1.322), (-1.139, -0.395)]

PRINTED_TOL = 2e-3


def identity_system(c1, c2, a=1.0, b=1.0):
    return TrigSystem(Mat2.identity(a), Mat2.identity(b), Vec2(c1, c2))


def torus_gap(p, q):
    d1 = abs(math.remainder(p[0] - q[0], 2 * math.pi))
    d2 = abs(math.remainder(p[1] - q[1], 2 * math.pi))
    return max(d1, d2)


def assert_pairs_match(found, expected, tol):
    assert len(found) == len(expected), (found, expected)
    for e in expected:
        assert min(torus_gap(f, e) for f in found) <= tol, (e, found)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)

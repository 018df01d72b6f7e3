import math

import numpy as np
import pytest

from trigsolve.core import DEFAULT_TOL, Mat2, SolutionTag, TrigSystem, Vec2, residual
from trigsolve.generic import solve_generic
from trigsolve.quartic import SingularBError

from conftest import GENERIC, GENERIC_PAIRS, PRINTED_TOL, assert_pairs_match, identity_system, torus_gap


def test_worked_example():
    out = solve_generic(GENERIC)
    assert out.tag is SolutionTag.FINITE
    assert_pairs_match(out.pairs(), GENERIC_PAIRS, PRINTED_TOL)
    assert all(s.residual <= 1e-12 for s in out.solutions)


def test_stretched():
    out = solve_generic(identity_system(2.0, 0.0))
    assert_pairs_match(out.pairs(), [(0.0, 0.0)], 1e-7)


def test_root_at_infinity_branch():
    out = solve_generic(identity_system(-1.0, 1.0))
    assert_pairs_match(out.pairs(), [(math.pi / 2, math.pi), (math.pi, math.pi / 2)], 1e-9)
    # residual oracle: both pairs are exact
    for t1, t2 in out.pairs():
        assert residual(identity_system(-1.0, 1.0), t1, t2) < 1e-15


def test_out_of_reach():
    assert solve_generic(identity_system(10.0, 0.0)).tag is SolutionTag.EMPTY


def test_theta1_family():
    out = solve_generic(identity_system(0.0, 0.0))
    assert out.tag is SolutionTag.THETA1_FAMILY


def test_requires_regular_b():
    with pytest.raises(SingularBError):
        solve_generic(TrigSystem.of([[1, 0], [0, 1]], [[0, 0], [0, 0]], [1, 0]))


def _planted(rng):
    while True:
        A = Mat2(*rng.uniform(-2, 2, 4))
        B = Mat2(*rng.uniform(-2, 2, 4))
        if abs(B.det()) >= 0.05:
            break
    t1, t2 = rng.uniform(-math.pi, math.pi, 2)
    C = A.matvec(Vec2.unit(t1)) + B.matvec(Vec2.unit(t2))
    return TrigSystem(A, B, C), (t1, t2)


def test_constructive_completeness():
    rng = np.random.default_rng(2024)
    misses = 0
    for _ in range(1000):
        system, truth = _planted(rng)
        out = solve_generic(system)
        assert out.tag is SolutionTag.FINITE
        assert len(out) <= 4
        assert all(s.residual <= DEFAULT_TOL.eps_residual for s in out.solutions)
        misses += min(torus_gap(p, truth) for p in out.pairs()) > 1e-8
    assert misses == 0


def test_swap_symmetry():
    rng = np.random.default_rng(77)
    checked = 0
    while checked < 200:
        system, _ = _planted(rng)
        if abs(system.A.det()) < 0.05:
            continue
        direct = solve_generic(system).pairs()
        swapped = [(b, a) for a, b in solve_generic(system.swapped()).pairs()]
        assert_pairs_match(direct, swapped, DEFAULT_TOL.eps_dedup)
        checked += 1

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigsolve.core import DEFAULT_TOL, angle_distance
from trigsolve.lintrig import LinearTrigEq, LinTrigTag, solve_linear_trig, solve_quadratic


def roots(a, b, c):
    res = solve_linear_trig(LinearTrigEq(a, b, c))
    assert res.tag is LinTrigTag.ROOTS
    return list(res.roots)


def same_set(xs, ys, tol=1e-12):
    return len(xs) == len(ys) and all(min(angle_distance(x, y) for y in ys) <= tol for x in xs)


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ((1.0, 0.0, -1.0), [0.0]),
        ((1.0, 0.0, 1.0), [math.pi]),
        ((1.0, 1.0, -1.0), [0.0, math.pi / 2]),
        ((0.0, 0.0, 1.0), []),
    ],
)
def test_examples(coeffs, expected):
    assert same_set(roots(*coeffs), expected)


def test_pi_branch_is_only_source():
    # leading coefficient c - a vanishes; the finite quadratic is the constant 2
    assert roots(1.0, 0.0, 1.0) == [math.pi]
    # pi plus a finite root: cos + sin + 1 = 0 at pi and -pi/2
    assert same_set(roots(1.0, 1.0, 1.0), [math.pi, -math.pi / 2])


def test_continuum():
    assert solve_linear_trig(LinearTrigEq(0.0, 0.0, 0.0)).is_continuum
    assert solve_linear_trig(LinearTrigEq(1e-13, -1e-13, 0.0)).is_continuum


def test_tangent_reports_single_root():
    # cos(x) = 1 exactly: double root at 0
    assert roots(-1.0, 0.0, 1.0) == [0.0]
    # amplitude sqrt(2) touching c
    r = roots(1.0, 1.0, -math.sqrt(2))
    assert len(r) == 1 and r[0] == pytest.approx(math.pi / 4, abs=1e-7)


def test_quadratic_stable_form():
    # t^2 - 1e8 t + 1 has a tiny root the textbook formula loses
    small, big = sorted(solve_quadratic(1.0, -1e8, 1.0, 0.0, 0.0))
    assert small == pytest.approx(1e-8, rel=1e-12)
    assert big == pytest.approx(1e8, rel=1e-12)


coef = st.floats(min_value=-10, max_value=10, allow_nan=False).filter(lambda v: abs(v) > 1e-3)


@settings(max_examples=200, deadline=None)
@given(coef, coef, coef)
def test_roots_satisfy_equation(a, b, c):
    eq = LinearTrigEq(a, b, c)
    rs = roots(a, b, c)
    assert len(rs) <= 2
    for x in rs:
        assert -math.pi < x <= math.pi
        assert abs(eq(x)) <= DEFAULT_TOL.eps_residual * eq.scale


@settings(max_examples=200, deadline=None)
@given(coef, coef, coef, st.floats(min_value=-6, max_value=6), st.booleans())
def test_scale_invariance(a, b, c, log_k, negate):
    k = (-1.0 if negate else 1.0) * 10.0**log_k
    base = roots(a, b, c)
    scaled = roots(k * a, k * b, k * c)
    assert same_set(base, scaled, DEFAULT_TOL.eps_dedup)


def test_completeness_dense_sampling():
    """Sign changes of the equation on a 10^6 grid only occur near returned roots."""
    rng = np.random.default_rng(7)
    x = np.linspace(-math.pi, math.pi, 1_000_001)
    cx, sx = np.cos(x), np.sin(x)
    for _ in range(40):
        a, b, c = rng.uniform(-2, 2, size=3)
        f = a * cx + b * sx + c
        crossings = x[:-1][np.sign(f[:-1]) != np.sign(f[1:])]
        found = roots(a, b, c)
        for z in crossings:
            assert min(angle_distance(z, r) for r in found) <= 1e-4
        # and every returned root is a real zero
        for r in found:
            assert abs(a * math.cos(r) + b * math.sin(r) + c) < 1e-9

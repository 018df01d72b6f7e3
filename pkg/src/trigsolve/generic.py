"""Solver for systems whose B matrix is safely invertible."""

from __future__ import annotations

import math

from .core import (
    DEFAULT_TOL,
    AngleSolution,
    Mat2,
    SolutionSet,
    ToleranceConfig,
    TrigSystem,
    Vec2,
    validate_and_dedup,
)
from .quartic import (
    ReducedSystem,
    deflated_eigs,
    near_real_seeds,
    quartic_coefficients,
    real_roots,
    reduce,
)

NEWTON_STEPS = 5
POLISH_STEPS = 8
# widest split searched around a quartic root for a hidden partner root
PAIR_RADIUS = 1e-3


def theta2_from_theta1(red: ReducedSystem, theta1: float) -> Vec2:
    """``[cos theta2, sin theta2] = d - M u(theta1)``; not normalized."""
    return red.d - red.M.matvec(Vec2.unit(theta1))


def _unit_defect(system: TrigSystem, adj: Mat2, det: float, theta1: float) -> tuple[float, float, float]:
    """``|B^-1 (C - A u)|^2 - 1`` and its first two theta1-derivatives.

    Evaluated without expanding the quadratic form, so the error stays at
    roundoff in B^-1 rather than roundoff in the (much larger) quartic
    coefficients.
    """
    c, s = math.cos(theta1), math.sin(theta1)
    A, C = system.A, system.C
    # A u, A u', A u'' with u = (c, s)
    au_x, au_y = A.m11 * c + A.m12 * s, A.m21 * c + A.m22 * s
    ad_x, ad_y = A.m12 * c - A.m11 * s, A.m22 * c - A.m21 * s
    k = 1.0 / det
    ex, ey = C.x - au_x, C.y - au_y
    wx, wy = (adj.m11 * ex + adj.m12 * ey) * k, (adj.m21 * ex + adj.m22 * ey) * k
    dwx, dwy = -(adj.m11 * ad_x + adj.m12 * ad_y) * k, -(adj.m21 * ad_x + adj.m22 * ad_y) * k
    ddwx, ddwy = (adj.m11 * au_x + adj.m12 * au_y) * k, (adj.m21 * au_x + adj.m22 * au_y) * k
    g = wx * wx + wy * wy - 1.0
    dg = 2.0 * (wx * dwx + wy * dwy)
    ddg = 2.0 * (dwx * dwx + dwy * dwy + wx * ddwx + wy * ddwy)
    return g, dg, ddg


def _model_steps(g: float, dg: float, ddg: float) -> list[float]:
    """Real roots x of ``g + dg x + ddg x^2 / 2``, smallest magnitude first."""
    if ddg == 0.0:
        return [-g / dg] if dg != 0.0 else []
    disc = dg * dg - 2.0 * ddg * g
    if disc < 0.0:
        return []
    q = -(dg + math.copysign(math.sqrt(disc), dg))
    steps = [q / ddg] + ([2.0 * g / q] if q != 0.0 else [])
    return sorted(steps, key=abs)


def polish_theta1(system: TrigSystem, adj: Mat2, det: float, theta1: float) -> float:
    """Step to the nearest root of the local quadratic model until |g| stalls.

    Plain Newton crawls near the close root pairs of an ill-conditioned B;
    the quadratic model converges fast and stays on the nearer member.
    """
    best = theta1
    g, dg, ddg = _unit_defect(system, adj, det, best)
    for _ in range(POLISH_STEPS):
        if g == 0.0:
            break
        steps = _model_steps(g, dg, ddg)
        if steps:
            x = steps[0]
        elif dg != 0.0:
            x = -g / dg
        else:
            break
        cand = best + x
        g_new, dg_new, ddg_new = _unit_defect(system, adj, det, cand)
        if not abs(g_new) < abs(g):
            break
        best, g, dg, ddg = cand, g_new, dg_new, ddg_new
    return best


def split_pair(system: TrigSystem, adj: Mat2, det: float, theta1: float) -> list[float]:
    """Starting points for the roots of the local quadratic model at theta1.

    With B close to singular, each crossing of the constraint shows up as two
    theta1 roots only ~sigma_min(B) apart.  The quartic sees them as one
    (near-)double root; the directly evaluated constraint still separates them.
    """
    g, dg, ddg = _unit_defect(system, adj, det, theta1)
    return [theta1 + x for x in _model_steps(g, dg, ddg) if abs(x) <= PAIR_RADIUS]


def fit_theta2(B: Mat2, rhs: Vec2, theta2: float) -> float:
    """Newton on ``|B u(theta2) - rhs|^2``, starting from ``theta2``.

    B^-1 rhs is accurate only to roundoff / sigma_min(B); normalizing it
    spreads that error into the well-determined direction.  Minimizing the
    misfit in B's own range keeps theta2 consistent with the system.
    """
    b11, b12, b21, b22 = B.m11, B.m12, B.m21, B.m22

    def misfit(theta: float) -> tuple[float, float, float, float]:
        c, s = math.cos(theta), math.sin(theta)
        return b11 * c + b12 * s - rhs.x, b21 * c + b22 * s - rhs.y, c, s

    best = theta2
    mx, my, c, s = misfit(best)
    best_err = mx * mx + my * my
    for _ in range(NEWTON_STEPS):
        # B u' and B u''
        dx, dy = b12 * c - b11 * s, b22 * c - b21 * s
        ddx, ddy = -(b11 * c + b12 * s), -(b21 * c + b22 * s)
        grad = mx * dx + my * dy
        curv = dx * dx + dy * dy + mx * ddx + my * ddy
        if grad == 0.0 or curv <= 0.0:
            break
        cand = best - grad / curv
        cx, cy, cc, cs = misfit(cand)
        cand_err = cx * cx + cy * cy
        if not cand_err < best_err:
            break
        best, mx, my, c, s, best_err = cand, cx, cy, cc, cs, cand_err
    return best


def solve_generic(system: TrigSystem, tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    red = reduce(system, tol)
    poly = quartic_coefficients(red, tol)
    if poly.identically_zero:
        return SolutionSet.theta1_family()

    eigs = deflated_eigs(poly, tol)
    ts, at_infinity = real_roots(poly, tol, eigs)
    extra = [t for t in near_real_seeds(poly, tol, eigs=eigs) if t not in ts]
    thetas = [2.0 * math.atan(t) for t in ts + extra]
    if at_infinity:
        thetas.append(math.pi)

    B = system.B
    det = B.det()
    adj = B.adjugate()
    # roundoff in B^-1 (C - A u) grows like ||B^-1||
    circle_tol = 10.0 * tol.eps_residual * max(1.0, adj.norm_inf() / abs(det))
    starts = list(thetas)
    for theta1 in thetas:
        starts.extend(split_pair(system, adj, det, theta1))
    polished: list[float] = []
    for theta1 in starts:
        theta1 = polish_theta1(system, adj, det, theta1)
        if all(theta1 != p for p in polished):
            polished.append(theta1)

    candidates = []
    for theta1 in polished:
        w = theta2_from_theta1(red, theta1)
        if abs(w.x * w.x + w.y * w.y - 1.0) > circle_tol:
            continue
        rhs = system.C - system.A.matvec(Vec2.unit(theta1))
        theta2 = fit_theta2(B, rhs, math.atan2(w.y, w.x))
        candidates.append(AngleSolution.evaluate(system, theta1, theta2))
    return validate_and_dedup(candidates, system, tol)

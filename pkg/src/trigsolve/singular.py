"""Rank analysis of B and the solvers for rank-0 and rank-1 B."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    AngleSolution,
    Mat2,
    SolutionSet,
    ToleranceConfig,
    TrigSystem,
    Vec2,
    dedup_angles,
    validate_and_dedup,
)
from .lintrig import LinearTrigEq, solve_linear_trig
from .quartic import singular_threshold


@dataclass(frozen=True)
class RankInfo:
    rank: int
    sigma1: float
    sigma2: float
    u1: Vec2
    u2: Vec2
    v1: Vec2
    v2: Vec2

    def reconstruct(self) -> Mat2:
        """``sigma1 u1 v1^T + sigma2 u2 v2^T``."""
        s1, s2 = self.sigma1, self.sigma2
        u1, u2, v1, v2 = self.u1, self.u2, self.v1, self.v2
        return Mat2(
            s1 * u1.x * v1.x + s2 * u2.x * v2.x,
            s1 * u1.x * v1.y + s2 * u2.x * v2.y,
            s1 * u1.y * v1.x + s2 * u2.y * v2.x,
            s1 * u1.y * v1.y + s2 * u2.y * v2.y,
        )


def svd2(B: Mat2) -> tuple[float, float, Vec2, Vec2, Vec2, Vec2]:
    """Closed-form SVD of a 2x2 matrix.

    Splits B into a similarity part ``[[E, -H], [H, E]]`` and a reflection
    part ``[[F, G], [G, -F]]``; their magnitudes give the singular values
    directly and their phases give the two rotations.
    """
    E = 0.5 * (B.m11 + B.m22)
    F = 0.5 * (B.m11 - B.m22)
    G = 0.5 * (B.m21 + B.m12)
    H = 0.5 * (B.m21 - B.m12)
    q = math.hypot(E, H)
    r = math.hypot(F, G)
    a1 = math.atan2(G, F)
    a2 = math.atan2(H, E)
    rot_v = 0.5 * (a2 - a1)
    rot_u = 0.5 * (a2 + a1)
    cu, su = math.cos(rot_u), math.sin(rot_u)
    cv, sv = math.cos(rot_v), math.sin(rot_v)
    u1, u2 = Vec2(cu, su), Vec2(-su, cu)
    v1, v2 = Vec2(cv, -sv), Vec2(sv, cv)
    sigma1, sigma2 = q + r, q - r
    if sigma2 < 0.0:
        sigma2 = -sigma2
        u2 = Vec2(-u2.x, -u2.y)
    return sigma1, sigma2, u1, u2, v1, v2


def rank_of(B: Mat2, tol: ToleranceConfig = DEFAULT_TOL) -> RankInfo:
    sigma1, sigma2, u1, u2, v1, v2 = svd2(B)
    cutoff = tol.eps_rank * max(sigma1, 1.0)
    rank = (sigma1 > cutoff) + (sigma2 > cutoff)
    return RankInfo(int(rank), sigma1, sigma2, u1, u2, v1, v2)


def _constraint_eq(direction: Vec2, system: TrigSystem) -> LinearTrigEq:
    """``direction^T (C - A u(theta1)) = 0`` as ``a cos + b sin + c = 0``."""
    row = system.A.vecmat(direction)
    return LinearTrigEq(-row.x, -row.y, direction.dot(system.C))


def solve_rank0(system: TrigSystem, tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    """B vanishes, so only ``A u(theta1) = C`` constrains the angles."""
    A, C = system.A, system.C
    det = A.det()
    if abs(det) > singular_threshold(A, tol):
        A_inv = A.inverse()
        w = A_inv.matvec(C)
        bound = tol.eps_residual * max(1.0, A_inv.norm_inf() * C.norm_inf())
        if abs(w.norm() - 1.0) <= bound:
            return SolutionSet.theta2_family([math.atan2(w.y, w.x)])
        return SolutionSet.empty()

    info = rank_of(A, tol)
    if info.rank == 0:
        # A and B both vanish: the equation reads 0 = C
        if C.norm_inf() <= tol.eps_residual:
            return SolutionSet.theta1_family()
        return SolutionSet.empty()

    # A has rank one: C must lie along u1(A), and the u1 component fixes theta1
    result = solve_linear_trig(_constraint_eq(info.u1, system), tol)
    thetas = []
    for theta1 in result.roots:
        miss = A.matvec(Vec2.unit(theta1)) - C
        if miss.norm_inf() <= tol.eps_residual:
            thetas.append(theta1)
    return SolutionSet.theta2_family(sorted(dedup_angles(thetas, tol.eps_dedup)))


def solve_rank1(
    system: TrigSystem,
    info: RankInfo,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> SolutionSet:
    """B = sigma1 u1 v1^T (any second singular value is discarded).

    Projecting onto the left null vector u2 removes theta2 and leaves a single
    linear trig equation in theta1.  For each root, the u1 component of the
    remaining right-hand side pins ``v1 . u(theta2)``, another linear trig
    equation.
    """
    A, C = system.A, system.C
    u1, u2, v1, sigma1 = info.u1, info.u2, info.v1, info.sigma1

    first = solve_linear_trig(_constraint_eq(u2, system), tol)
    if first.is_continuum:
        return SolutionSet.theta1_family()

    candidates = []
    for theta1 in first.roots:
        rhs = C - A.matvec(Vec2.unit(theta1))
        if abs(u2.dot(rhs)) > tol.eps_residual * max(1.0, rhs.norm()):
            continue
        rho = u1.dot(rhs) / sigma1
        second = solve_linear_trig(LinearTrigEq(v1.x, v1.y, -rho), tol)
        for theta2 in second.roots:
            candidates.append(AngleSolution.evaluate(system, theta1, theta2))
    return validate_and_dedup(candidates, system, tol)

"""Planar two-link inverse kinematics on top of the generic solver.

The end effector of a two-link arm with absolute link angles (theta1, phi2) is

    l1 * u(theta1) + l2 * u(phi2) = target,

which is the solver's system with A = l1*I, B = l2*I and C = target.  Joint
solutions are reported with the elbow as a relative angle, phi2 - theta1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    AngleSolution,
    Mat2,
    SolutionSet,
    SolutionTag,
    ToleranceConfig,
    TrigSystem,
    Vec2,
    normalize_angle,
)
from .dispatch import solve


@dataclass(frozen=True)
class TwoLinkArm:
    l1: float
    l2: float
    target: Vec2

    def __post_init__(self) -> None:
        if not (self.l1 > 0.0 and self.l2 > 0.0):
            raise ValueError(f"link lengths must be positive, got l1={self.l1}, l2={self.l2}")
        if not (math.isfinite(self.l1) and math.isfinite(self.l2)):
            raise ValueError("link lengths must be finite")

    def as_system(self) -> TrigSystem:
        return TrigSystem(Mat2.identity(self.l1), Mat2.identity(self.l2), self.target)


def forward(l1: float, l2: float, theta1: float, theta2_rel: float) -> Vec2:
    """End-effector position for a shoulder angle and a relative elbow angle."""
    phi2 = theta1 + theta2_rel
    return Vec2(
        l1 * math.cos(theta1) + l2 * math.cos(phi2),
        l1 * math.sin(theta1) + l2 * math.sin(phi2),
    )


def ik_two_link(arm: TwoLinkArm, tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    report = solve(arm.as_system(), tol)
    if report.solutions.tag is not SolutionTag.FINITE:
        # only l1 == l2 with the target at the base gives a family; not a joint pair
        return report.solutions
    bound = tol.eps_residual * max(1.0, arm.l1 + arm.l2)
    joints = []
    for s in report.solutions.solutions:
        rel = normalize_angle(s.theta2 - s.theta1)
        err = (forward(arm.l1, arm.l2, s.theta1, rel) - arm.target).norm_inf()
        if err <= bound:
            joints.append(AngleSolution(s.theta1, rel, err))
    joints.sort(key=lambda j: (j.theta1, j.theta2))
    return SolutionSet.finite(joints)

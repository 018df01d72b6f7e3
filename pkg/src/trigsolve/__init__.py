"""All-solution solver for A u(theta1) + B u(theta2) = C with 2x2 A, B."""

from .core import (
    DEFAULT_TOL,
    AngleSolution,
    Mat2,
    SolutionSet,
    SolutionTag,
    ToleranceConfig,
    TrigSystem,
    Vec2,
    angle_distance,
    normalize_angle,
    residual,
)
from .dispatch import SolveReport, solve, validate_and_dedup
from .kinematics import TwoLinkArm, ik_two_link

__all__ = [
    "DEFAULT_TOL",
    "AngleSolution",
    "Mat2",
    "SolutionSet",
    "SolutionTag",
    "SolveReport",
    "ToleranceConfig",
    "TrigSystem",
    "TwoLinkArm",
    "Vec2",
    "angle_distance",
    "ik_two_link",
    "normalize_angle",
    "residual",
    "solve",
    "validate_and_dedup",
]

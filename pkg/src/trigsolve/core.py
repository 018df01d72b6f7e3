"""Shared value types and angle helpers.

The system being solved throughout the package is

    A @ [cos(theta1), sin(theta1)] + B @ [cos(theta2), sin(theta2)] = C

with 2x2 real ``A``, ``B`` and a real 2-vector ``C``.  Everything here is a
plain immutable value; the solver modules only ever build new instances.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r}")


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        _check_finite(self.x, self.y)

    @classmethod
    def of(cls, values: Sequence[float]) -> "Vec2":
        if len(values) != 2:
            raise ValueError(f"expected 2 components, got {len(values)}")
        return cls(values[0], values[1])

    @classmethod
    def unit(cls, theta: float) -> "Vec2":
        return cls(math.cos(theta), math.sin(theta))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(k * self.x, k * self.y)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm_inf(self) -> float:
        return max(abs(self.x), abs(self.y))

    def as_list(self) -> list[float]:
        return [self.x, self.y]


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix ``[[m11, m12], [m21, m22]]``."""

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self) -> None:
        for name in ("m11", "m12", "m21", "m22"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_finite(self.m11, self.m12, self.m21, self.m22)

    @classmethod
    def of(cls, rows: Sequence[Sequence[float]]) -> "Mat2":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 matrix")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    @classmethod
    def identity(cls, scale: float = 1.0) -> "Mat2":
        return cls(scale, 0.0, 0.0, scale)

    @classmethod
    def zero(cls) -> "Mat2":
        return cls(0.0, 0.0, 0.0, 0.0)

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def adjugate(self) -> "Mat2":
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def transpose(self) -> "Mat2":
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 0.0:
            raise ZeroDivisionError("singular 2x2 matrix")
        adj = self.adjugate()
        return Mat2(adj.m11 / det, adj.m12 / det, adj.m21 / det, adj.m22 / det)

    def matvec(self, v: Vec2) -> Vec2:
        return Vec2(self.m11 * v.x + self.m12 * v.y, self.m21 * v.x + self.m22 * v.y)

    def vecmat(self, v: Vec2) -> Vec2:
        """Row vector times matrix, ``v^T M``."""
        return Vec2(v.x * self.m11 + v.y * self.m21, v.x * self.m12 + v.y * self.m22)

    def matmul(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def scaled(self, k: float) -> "Mat2":
        return Mat2(k * self.m11, k * self.m12, k * self.m21, k * self.m22)

    def norm_inf(self) -> float:
        """Induced infinity norm (largest absolute row sum)."""
        return max(abs(self.m11) + abs(self.m12), abs(self.m21) + abs(self.m22))

    def max_abs(self) -> float:
        return max(abs(self.m11), abs(self.m12), abs(self.m21), abs(self.m22))

    def as_rows(self) -> list[list[float]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]


@dataclass(frozen=True)
class TrigSystem:
    A: Mat2
    B: Mat2
    C: Vec2

    @classmethod
    def of(
        cls,
        A: Sequence[Sequence[float]],
        B: Sequence[Sequence[float]],
        C: Sequence[float],
    ) -> "TrigSystem":
        return cls(Mat2.of(A), Mat2.of(B), Vec2.of(C))

    def scaled(self, k: float) -> "TrigSystem":
        return TrigSystem(self.A.scaled(k), self.B.scaled(k), self.C * k)

    def swapped(self) -> "TrigSystem":
        return TrigSystem(self.B, self.A, self.C)


@dataclass(frozen=True)
class ToleranceConfig:
    eps_det: float = 1e-10
    eps_rank: float = 1e-10
    eps_residual: float = 1e-9
    eps_dedup: float = 1e-7
    eps_imag: float = 1e-8

    def __post_init__(self) -> None:
        for name, value in vars(self).items():
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"tolerance {name} must be finite and > 0, got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def normalize_angle(theta: float) -> float:
    """Map ``theta`` into ``(-pi, pi]``."""
    if not math.isfinite(theta):
        raise ValueError(f"cannot normalize non-finite angle {theta!r}")
    wrapped = math.remainder(theta, TWO_PI)
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def angle_distance(alpha: float, beta: float) -> float:
    """Shortest arc length between two angles, in ``[0, pi]``."""
    return abs(math.remainder(alpha - beta, TWO_PI))


def residual(system: TrigSystem, theta1: float, theta2: float) -> float:
    """Max-norm of ``A u(theta1) + B u(theta2) - C``."""
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    A, B, C = system.A, system.B, system.C
    rx = A.m11 * c1 + A.m12 * s1 + B.m11 * c2 + B.m12 * s2 - C.x
    ry = A.m21 * c1 + A.m22 * s1 + B.m21 * c2 + B.m22 * s2 - C.y
    return max(abs(rx), abs(ry))


@dataclass(frozen=True)
class AngleSolution:
    theta1: float
    theta2: float
    residual: float

    @classmethod
    def evaluate(cls, system: TrigSystem, theta1: float, theta2: float) -> "AngleSolution":
        t1, t2 = normalize_angle(theta1), normalize_angle(theta2)
        return cls(t1, t2, residual(system, t1, t2))


class SolutionTag(str, enum.Enum):
    FINITE = "finite"
    THETA2_FAMILY = "theta2_family"
    THETA1_FAMILY = "theta1_family"
    EMPTY = "empty"


@dataclass(frozen=True)
class SolutionSet:
    """Tagged solver result.

    ``FINITE`` carries the isolated pairs in ``solutions``.  ``THETA2_FAMILY``
    carries the admissible theta1 values in ``theta1_values`` (theta2 free).
    ``THETA1_FAMILY`` and ``EMPTY`` carry no angles.
    """

    tag: SolutionTag
    solutions: tuple[AngleSolution, ...] = ()
    theta1_values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.tag is SolutionTag.FINITE and not self.solutions:
            raise ValueError("a finite solution set must be non-empty; use EMPTY")
        if self.tag is not SolutionTag.FINITE and self.solutions:
            raise ValueError(f"{self.tag.value} set cannot carry solution pairs")
        if self.tag is not SolutionTag.THETA2_FAMILY and self.theta1_values:
            raise ValueError(f"{self.tag.value} set cannot carry theta1 values")

    @classmethod
    def finite(cls, solutions: Iterable[AngleSolution]) -> "SolutionSet":
        sols = tuple(solutions)
        return cls(SolutionTag.FINITE, sols) if sols else cls.empty()

    @classmethod
    def theta2_family(cls, theta1_values: Iterable[float]) -> "SolutionSet":
        vals = tuple(theta1_values)
        if not vals:
            return cls.empty()
        return cls(SolutionTag.THETA2_FAMILY, theta1_values=vals)

    @classmethod
    def theta1_family(cls) -> "SolutionSet":
        return cls(SolutionTag.THETA1_FAMILY)

    @classmethod
    def empty(cls) -> "SolutionSet":
        return cls(SolutionTag.EMPTY)

    @property
    def is_family(self) -> bool:
        return self.tag in (SolutionTag.THETA1_FAMILY, SolutionTag.THETA2_FAMILY)

    def __len__(self) -> int:
        return len(self.solutions)

    def pairs(self) -> list[tuple[float, float]]:
        return [(s.theta1, s.theta2) for s in self.solutions]


def dedup_angles(angles: Iterable[float], tol: float) -> list[float]:
    """Normalize and drop angles within ``tol`` of an earlier one."""
    kept: list[float] = []
    for a in angles:
        a = normalize_angle(a)
        if all(angle_distance(a, k) >= tol for k in kept):
            kept.append(a)
    return kept


def validate_and_dedup(
    candidates: Iterable[AngleSolution],
    system: TrigSystem,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> SolutionSet:
    """Re-check candidates against the full system and merge near-duplicates.

    Residuals are recomputed from scratch, anything above ``eps_residual`` is
    dropped, and pairs closer than ``eps_dedup`` on the torus collapse onto the
    one with the smaller residual.  Output is sorted by ``(theta1, theta2)``.
    """
    fresh = [AngleSolution.evaluate(system, c.theta1, c.theta2) for c in candidates]
    fresh = [s for s in fresh if s.residual <= tol.eps_residual]
    fresh.sort(key=lambda s: s.residual)
    kept: list[AngleSolution] = []
    for s in fresh:
        close = any(
            max(angle_distance(s.theta1, k.theta1), angle_distance(s.theta2, k.theta2))
            < tol.eps_dedup
            for k in kept
        )
        if not close:
            kept.append(s)
    kept.sort(key=lambda s: (s.theta1, s.theta2))
    return SolutionSet.finite(kept)


__all__ = [
    "AngleSolution",
    "DEFAULT_TOL",
    "Mat2",
    "SolutionSet",
    "SolutionTag",
    "ToleranceConfig",
    "TrigSystem",
    "Vec2",
    "angle_distance",
    "dedup_angles",
    "normalize_angle",
    "residual",
    "validate_and_dedup",
]

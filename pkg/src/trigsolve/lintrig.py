"""Exact solver for ``a*cos(x) + b*sin(x) + c = 0``.

Uses t = tan(x/2), which turns the equation into

    (c - a) t^2 + 2 b t + (a + c) = 0.

x = pi has no finite t, so it is tested separately whenever the leading
coefficient vanishes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DEFAULT_TOL, ToleranceConfig, _check_finite, dedup_angles, normalize_angle


@dataclass(frozen=True)
class LinearTrigEq:
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        _check_finite(self.a, self.b, self.c)

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.a) + abs(self.b) + abs(self.c))

    def __call__(self, x: float) -> float:
        return self.a * math.cos(x) + self.b * math.sin(x) + self.c


class LinTrigTag(str, enum.Enum):
    ROOTS = "roots"
    CONTINUUM = "continuum"


@dataclass(frozen=True)
class LinTrigResult:
    tag: LinTrigTag
    roots: tuple[float, ...] = ()

    @property
    def is_continuum(self) -> bool:
        return self.tag is LinTrigTag.CONTINUUM


def solve_quadratic(qa: float, qb: float, qc: float, lead_tol: float, disc_tol: float) -> list[float]:
    """Real roots of ``qa t^2 + qb t + qc`` without cancellation.

    ``lead_tol`` decides when the quadratic degrades to linear; a negative
    discriminant no smaller than ``-disc_tol`` is treated as a tangency.
    """
    if abs(qa) <= lead_tol:
        if qb == 0.0:
            return []
        return [-qc / qb]
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        if disc < -disc_tol:
            return []
        disc = 0.0
    q = -0.5 * (qb + math.copysign(math.sqrt(disc), qb))
    if q == 0.0:
        # qb == 0 and qc == 0: double root at the origin
        return [0.0]
    return [q / qa, qc / q]


def solve_linear_trig(eq: LinearTrigEq, tol: ToleranceConfig = DEFAULT_TOL) -> LinTrigResult:
    """All x in (-pi, pi] with ``eq(x) == 0``.

    Returns ``CONTINUUM`` when all three coefficients vanish, otherwise the
    (possibly empty) deduplicated root list.
    """
    a, b, c = eq.a, eq.b, eq.c
    scale = eq.scale
    if max(abs(a), abs(b), abs(c)) <= tol.eps_det * scale:
        return LinTrigResult(LinTrigTag.CONTINUUM)

    lead = c - a
    candidates = [
        2.0 * math.atan(t)
        for t in solve_quadratic(
            lead,
            2.0 * b,
            a + c,
            lead_tol=tol.eps_det * scale,
            disc_tol=tol.eps_residual * scale * scale,
        )
        if math.isfinite(t)
    ]
    if abs(lead) <= tol.eps_det * scale:
        candidates.append(math.pi)

    accept = tol.eps_residual * scale
    good = [normalize_angle(x) for x in candidates if abs(eq(x)) <= accept]
    roots = dedup_angles(good, tol.eps_dedup)
    return LinTrigResult(LinTrigTag.ROOTS, tuple(sorted(roots)))

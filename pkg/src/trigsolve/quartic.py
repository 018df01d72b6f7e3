"""Reduction of a regular-B system to a quartic in t = tan(theta1/2).

With B invertible, ``[cos theta2, sin theta2] = d - M u(theta1)`` where
``M = B^-1 A`` and ``d = B^-1 C``.  Requiring that vector to be a unit vector
gives the scalar constraint

    g(theta1) = u^T Q u - 2 r^T u + s = 0,   Q = M^T M, r = M^T d, s = d^T d - 1.

Multiplying g by (1 + t^2)^2 and substituting the half-angle forms of cos/sin
yields the quartic whose coefficients are built in ``quartic_coefficients``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Mat2, ToleranceConfig, TrigSystem, Vec2


# a double real root perturbed by roundoff splits into a pair about this wide
TANGENCY_IMAG = 1e-6


class SingularBError(ValueError):
    """B is too close to singular for the quartic reduction; use the singular solvers."""


@dataclass(frozen=True)
class ReducedSystem:
    M: Mat2
    d: Vec2
    q11: float
    q12: float
    q22: float
    r: Vec2
    s: float

    @property
    def scale(self) -> float:
        q_inf = max(abs(self.q11) + abs(self.q12), abs(self.q12) + abs(self.q22))
        return max(1.0, q_inf, self.r.norm_inf(), abs(self.s))

    def constraint(self, theta1: float) -> float:
        """g(theta1) from the expanded quadratic form."""
        c, s = math.cos(theta1), math.sin(theta1)
        quad = self.q11 * c * c + 2.0 * self.q12 * c * s + self.q22 * s * s
        return quad - 2.0 * (self.r.x * c + self.r.y * s) + self.s


@dataclass(frozen=True)
class QuarticPoly:
    a4: float
    a3: float
    a2: float
    a1: float
    a0: float
    identically_zero: bool
    scale: float = 1.0

    @property
    def coeffs(self) -> tuple[float, float, float, float, float]:
        """Descending-order coefficients ``(a4, a3, a2, a1, a0)``."""
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def __call__(self, t: float) -> float:
        return (((self.a4 * t + self.a3) * t + self.a2) * t + self.a1) * t + self.a0

    def derivative(self, t: float) -> float:
        return ((4.0 * self.a4 * t + 3.0 * self.a3) * t + 2.0 * self.a2) * t + self.a1


def singular_threshold(B: Mat2, tol: ToleranceConfig) -> float:
    """|det B| at or below this value routes to the singular solvers."""
    return tol.eps_det * max(1.0, B.norm_inf() ** 2)


def reduce(system: TrigSystem, tol: ToleranceConfig = DEFAULT_TOL) -> ReducedSystem:
    B = system.B
    det = B.det()
    if abs(det) <= singular_threshold(B, tol):
        raise SingularBError(
            f"|det(B)| = {abs(det):.3e} is below the dispatch threshold; "
            "solve with trigsolve.singular instead"
        )
    adj = B.adjugate()
    M = adj.matmul(system.A).scaled(1.0 / det)
    d = adj.matvec(system.C) * (1.0 / det)
    Q = M.transpose().matmul(M)
    r = M.vecmat(d)
    s = d.dot(d) - 1.0
    # Q is symmetric by construction; average off-diagonals to kill roundoff
    q12 = 0.5 * (Q.m12 + Q.m21)
    return ReducedSystem(M=M, d=d, q11=Q.m11, q12=q12, q22=Q.m22, r=r, s=s)


def quartic_coefficients(red: ReducedSystem, tol: ToleranceConfig = DEFAULT_TOL) -> QuarticPoly:
    q11, q12, q22, s = red.q11, red.q12, red.q22, red.s
    r1, r2 = red.r.x, red.r.y
    a4 = q11 + 2.0 * r1 + s
    a3 = -4.0 * q12 - 4.0 * r2
    a2 = -2.0 * q11 + 4.0 * q22 + 2.0 * s
    a1 = 4.0 * q12 - 4.0 * r2
    a0 = q11 - 2.0 * r1 + s
    scale = red.scale
    zero = all(abs(a) <= tol.eps_det * scale for a in (a4, a3, a2, a1, a0))
    return QuarticPoly(a4, a3, a2, a1, a0, identically_zero=zero, scale=scale)


def _polish(poly: QuarticPoly, t: float, steps: int = 5) -> float:
    best, best_val = t, abs(poly(t))
    for _ in range(steps):
        if best_val == 0.0:
            break
        dp = poly.derivative(best)
        if dp == 0.0 or not math.isfinite(dp):
            break
        cand = best - poly(best) / dp
        val = abs(poly(cand))
        if not val < best_val:
            break
        best, best_val = cand, val
    return best


def certified(poly: QuarticPoly, t: float, rel: float = 1e-8) -> bool:
    """Root certificate: ``|P(t)| <= rel * max(1, |t|)^4 * max|a_i|``."""
    amax = max(abs(a) for a in poly.coeffs)
    return abs(poly(t)) <= rel * max(1.0, abs(t)) ** 4 * amax


def deflated_eigs(poly: QuarticPoly, tol: ToleranceConfig) -> tuple[np.ndarray, bool]:
    """Companion-matrix eigenvalues after dropping negligible leading terms."""
    if poly.identically_zero:
        raise ValueError("identically zero quartic has a continuum of roots")
    coeffs = list(poly.coeffs)
    lead_tol = tol.eps_det * poly.scale
    at_infinity = False
    while coeffs and abs(coeffs[0]) <= lead_tol:
        if len(coeffs) == 5:
            at_infinity = True
        coeffs.pop(0)
    degree = len(coeffs) - 1
    if degree <= 0:
        return np.empty(0, dtype=complex), at_infinity

    monic = np.asarray(coeffs[1:], dtype=float) / coeffs[0]
    companion = np.zeros((degree, degree))
    companion[0, :] = -monic
    companion[np.arange(1, degree), np.arange(degree - 1)] = 1.0
    return np.linalg.eigvals(companion), at_infinity


def real_roots(
    poly: QuarticPoly,
    tol: ToleranceConfig = DEFAULT_TOL,
    eigs: tuple[np.ndarray, bool] | None = None,
) -> tuple[list[float], bool]:
    """Real roots in t, plus whether theta1 = pi (t at infinity) is a root.

    Leading coefficients below ``eps_det * scale`` are deflated away; the
    first such deflation from degree 4 means P has a root at infinity.  The
    rest come from companion-matrix eigenvalues, each polished by Newton on
    the full quartic.  Nearly-real eigenvalue pairs that pass the residual
    certificate are kept too, since a tangential double root routinely
    splits into a complex pair of size sqrt(machine eps).
    """
    eigs, at_infinity = deflated_eigs(poly, tol) if eigs is None else eigs
    # exact-real eigenvalues first so they win the dedup against rescued ones
    ranked = sorted(eigs, key=lambda z: abs(z.imag) / (1.0 + abs(z.real)))
    roots: list[float] = []
    for z in ranked:
        re, im = float(z.real), abs(float(z.imag))
        t = _polish(poly, re)
        if not math.isfinite(t):
            continue
        if im > tol.eps_imag * (1.0 + abs(re)):
            near_double = im <= TANGENCY_IMAG * (1.0 + abs(re)) and abs(t - re) <= 10.0 * im
            if not (near_double and certified(poly, t)):
                continue
        theta = 2.0 * math.atan(t)
        if all(abs(theta - 2.0 * math.atan(k)) >= tol.eps_dedup for k in roots):
            roots.append(t)
    roots.sort()
    return roots, at_infinity


def near_real_seeds(
    poly: QuarticPoly,
    tol: ToleranceConfig = DEFAULT_TOL,
    width: float = 1e-4,
    eigs: tuple[np.ndarray, bool] | None = None,
) -> list[float]:
    """Real parts of eigenvalues within ``width * (1 + |Re|)`` of the real axis.

    These are not certified roots.  They are starting points for callers
    that can refine against a better-conditioned form of the constraint.
    """
    eigs, _ = deflated_eigs(poly, tol) if eigs is None else eigs
    return sorted(
        float(z.real) for z in eigs if abs(z.imag) <= width * (1.0 + abs(z.real))
    )

"""Brute-force reference solver used to cross-check the analytical paths.

Nothing here touches the quartic, the SVD or the linear-trig solver: the
torus is sampled on a regular grid, grid-local minima of the residual are
refined by alternating golden-section line searches and a short Newton finish
on the residual map, and the survivors are clustered.  It is slow and only
meant for verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import SolutionTag, TrigSystem

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
CLUSTER_RADIUS = 1e-4


@dataclass
class OracleResult:
    points: list[tuple[float, float]]
    family_suspected: bool = False
    n_minima: int = 0
    grid_n: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass
class MatchVerdict:
    ok: bool
    counts_equal: bool
    all_matched: bool
    n_solver: int
    n_oracle: int
    max_distance: float = 0.0
    note: str = ""


def _coeffs(system: TrigSystem) -> np.ndarray:
    A, B, C = system.A, system.B, system.C
    return np.array([A.m11, A.m12, A.m21, A.m22, B.m11, B.m12, B.m21, B.m22, C.x, C.y])


def _components(k: np.ndarray, t1, t2):
    c1, s1 = np.cos(t1), np.sin(t1)
    c2, s2 = np.cos(t2), np.sin(t2)
    rx = k[0] * c1 + k[1] * s1 + k[4] * c2 + k[5] * s2 - k[8]
    ry = k[2] * c1 + k[3] * s1 + k[6] * c2 + k[7] * s2 - k[9]
    return rx, ry


def _sq_residual(k, t1, t2):
    rx, ry = _components(k, t1, t2)
    return rx * rx + ry * ry


def _max_residual(k, t1, t2):
    rx, ry = _components(k, t1, t2)
    return np.maximum(np.abs(rx), np.abs(ry))


def _golden(f, lo: np.ndarray, hi: np.ndarray, iters: int) -> np.ndarray:
    a, b = lo.copy(), hi.copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc < fd
        # keep [a, d] where f(c) < f(d), else [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - _INV_PHI * (b - a), d)
        new_d = np.where(left, c, a + _INV_PHI * (b - a))
        probe = np.where(left, new_c, new_d)
        fp = f(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        c, d = new_c, new_d
    return 0.5 * (a + b)


def _refine(k, t1, t2, h: float, sweeps: int = 60, inner: int = 40):
    w1 = np.full_like(t1, h)
    w2 = np.full_like(t2, h)
    for _ in range(sweeps):
        fixed2 = t2
        n1 = _golden(lambda x: _sq_residual(k, x, fixed2), t1 - w1, t1 + w1, inner)
        w1 = np.clip(4.0 * np.abs(n1 - t1), 1e-12, h)
        t1 = n1
        fixed1 = t1
        n2 = _golden(lambda y: _sq_residual(k, fixed1, y), t2 - w2, t2 + w2, inner)
        w2 = np.clip(4.0 * np.abs(n2 - t2), 1e-12, h)
        t2 = n2
    return t1, t2


def _newton_finish(k, t1, t2, steps: int = 8):
    """Newton on the 2x2 residual map, keeping only steps that lower |F|^2.

    Coordinate-wise line searches crawl along valleys that run diagonally
    across the torus; a few full steps close the remaining gap.
    """
    f = _sq_residual(k, t1, t2)
    for _ in range(steps):
        c1, s1 = np.cos(t1), np.sin(t1)
        c2, s2 = np.cos(t2), np.sin(t2)
        rx, ry = _components(k, t1, t2)
        j11, j12 = k[1] * c1 - k[0] * s1, k[5] * c2 - k[4] * s2
        j21, j22 = k[3] * c1 - k[2] * s1, k[7] * c2 - k[6] * s2
        det = j11 * j22 - j12 * j21
        ok = np.abs(det) > 1e-14
        safe = np.where(ok, det, 1.0)
        d1 = np.where(ok, -(j22 * rx - j12 * ry) / safe, 0.0)
        d2 = np.where(ok, -(j11 * ry - j21 * rx) / safe, 0.0)
        n1, n2 = t1 + d1, t2 + d2
        fn = _sq_residual(k, n1, n2)
        better = fn < f
        t1, t2, f = np.where(better, n1, t1), np.where(better, n2, t2), np.where(better, fn, f)
    return t1, t2


def _wrap(x: np.ndarray) -> np.ndarray:
    w = np.remainder(x + np.pi, 2.0 * np.pi) - np.pi
    return np.where(w == -np.pi, np.pi, w)


def _torus_gap(p, q) -> float:
    d1 = abs(math.remainder(p[0] - q[0], 2.0 * math.pi))
    d2 = abs(math.remainder(p[1] - q[1], 2.0 * math.pi))
    return max(d1, d2)


def oracle_solve(system: TrigSystem, grid_n: int = 1024, tol_accept: float = 1e-8) -> OracleResult:
    """Grid-search every (theta1, theta2) with residual at most ``tol_accept``."""
    if grid_n < 256:
        raise ValueError("grid_n must be at least 256")
    k = _coeffs(system)
    h = 2.0 * math.pi / grid_n
    grid = -math.pi + h * np.arange(grid_n)
    R = _max_residual(k, grid[:, None], grid[None, :])

    is_min = np.ones_like(R, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= R <= np.roll(np.roll(R, di, axis=0), dj, axis=1)
    # a root lies within h/2 of some grid node in each coordinate
    lipschitz = system.A.norm_inf() + system.B.norm_inf()
    gate = max(1e-3, 100.0 * tol_accept, 1.01 * lipschitz * h / 2.0)
    idx = np.argwhere(is_min & (R <= gate))
    n_minima = len(idx)
    cap = 4 * grid_n
    if n_minima > cap:
        idx = idx[np.linspace(0, n_minima - 1, cap).astype(int)]
    else:
        # two roots closer than a cell share one grid minimum; other in-gate
        # nodes descend into whichever root is nearer
        near = np.argwhere(~is_min & (R <= gate))
        near = near[np.argsort(R[near[:, 0], near[:, 1]], kind="stable")]
        idx = np.concatenate([idx, near[: cap - n_minima]])

    if len(idx) == 0:
        return OracleResult([], False, 0, grid_n)
    t1, t2 = _refine(k, grid[idx[:, 0]], grid[idx[:, 1]], h)
    t1, t2 = _newton_finish(k, t1, t2)
    t1, t2 = _wrap(t1), _wrap(t2)
    res = _max_residual(k, t1, t2)
    order = np.argsort(res, kind="stable")

    clusters: list[tuple[float, float]] = []
    for i in order:
        if res[i] > tol_accept:
            break
        p = (float(t1[i]), float(t2[i]))
        if all(_torus_gap(p, q) >= CLUSTER_RADIUS for q in clusters):
            clusters.append(p)
    family = len(clusters) >= grid_n / 8
    clusters.sort()
    return OracleResult(clusters, family, n_minima, grid_n)


def oracle_match(report, oracle_points, tol_match: float = 1e-3) -> MatchVerdict:
    """Compare a solver report with oracle output by optimal bipartite pairing."""
    family_flag = getattr(oracle_points, "family_suspected", False)
    points = list(oracle_points)
    sols = report.solutions
    if sols.is_family:
        return MatchVerdict(family_flag, True, family_flag, 0, len(points), note="family")
    if family_flag:
        return MatchVerdict(False, False, False, len(sols), len(points), note="oracle suspects a family")

    mine = sols.pairs()
    counts_equal = len(mine) == len(points)
    if not mine or not points:
        return MatchVerdict(counts_equal, counts_equal, counts_equal, len(mine), len(points))
    cost = np.array([[_torus_gap(p, q) for q in points] for p in mine])
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max())
    all_matched = counts_equal and worst <= tol_match
    return MatchVerdict(all_matched, counts_equal, all_matched, len(mine), len(points), worst)


__all__ = ["MatchVerdict", "OracleResult", "oracle_match", "oracle_solve"]

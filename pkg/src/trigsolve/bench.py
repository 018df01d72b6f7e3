"""Seeded random systems with planted solutions, and the summary statistics."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Mat2,
    SolutionTag,
    ToleranceConfig,
    TrigSystem,
    Vec2,
    angle_distance,
)
from .dispatch import SolveReport, solve

CLASSES = ("none", "rank0", "rank1")
RECOVERY_TOL = 1e-8
RESIDUAL_GATE = 1e-10
MIN_DET = 0.05


@dataclass(frozen=True)
class PlantedSystem:
    system: TrigSystem
    kind: str
    theta1: float
    theta2: float


def _uniform_mat(rng: np.random.Generator, lo: float = -2.0, hi: float = 2.0) -> Mat2:
    return Mat2(*rng.uniform(lo, hi, size=4))


def _regular_mat(rng: np.random.Generator) -> Mat2:
    while True:
        M = _uniform_mat(rng)
        if abs(M.det()) >= MIN_DET:
            return M


def _rank1_mat(rng: np.random.Generator) -> Mat2:
    sigma = rng.uniform(0.5, 2.0)
    a, b = rng.uniform(-math.pi, math.pi, size=2)
    u, v = Vec2.unit(a), Vec2.unit(b)
    return Mat2(sigma * u.x * v.x, sigma * u.x * v.y, sigma * u.y * v.x, sigma * u.y * v.y)


def planted_system(rng: np.random.Generator, kind: str = "none") -> PlantedSystem:
    """Build ``C = A u(theta1) + B u(theta2)`` from random matrices and angles.

    ``kind`` is ``"none"`` (regular B with |det B| >= 0.05), ``"rank0"``
    (B = 0, regular A) or ``"rank1"`` (B = sigma u v^T).
    """
    if kind == "none":
        A, B = _uniform_mat(rng), _regular_mat(rng)
    elif kind == "rank0":
        A, B = _regular_mat(rng), Mat2.zero()
    elif kind == "rank1":
        A, B = _uniform_mat(rng), _rank1_mat(rng)
    else:
        raise ValueError(f"unknown singularity class {kind!r}")
    t1, t2 = rng.uniform(-math.pi, math.pi, size=2)
    C = A.matvec(Vec2.unit(t1)) + B.matvec(Vec2.unit(t2))
    return PlantedSystem(TrigSystem(A, B, C), kind, float(t1), float(t2))


def class_schedule(count: int, singular: str) -> list[str]:
    """Per-index class; ``mixed`` repeats 8 regular, 1 rank-0, 1 rank-1."""
    if singular == "mixed":
        pattern = ["none"] * 8 + ["rank0", "rank1"]
        return [pattern[i % 10] for i in range(count)]
    return [singular] * count


def recovered(planted: PlantedSystem, report: SolveReport) -> tuple[bool, float]:
    """Whether the planted angles were found, and the worst residual seen."""
    sols = report.solutions
    if planted.kind == "rank0":
        if sols.tag is not SolutionTag.THETA2_FAMILY:
            return False, math.inf
        A, C = planted.system.A, planted.system.C
        worst = max(
            (A.matvec(Vec2.unit(t)) - C).norm_inf() for t in sols.theta1_values
        )
        hit = any(angle_distance(t, planted.theta1) <= RECOVERY_TOL for t in sols.theta1_values)
        return hit and worst <= RESIDUAL_GATE, worst
    if sols.tag is not SolutionTag.FINITE:
        return False, math.inf
    worst = report.max_residual
    hit = any(
        max(angle_distance(s.theta1, planted.theta1), angle_distance(s.theta2, planted.theta2))
        <= RECOVERY_TOL
        for s in sols.solutions
    )
    return hit and worst <= RESIDUAL_GATE, worst


@dataclass
class RandomRun:
    records: list[dict]
    summary: dict


def run_random(
    count: int,
    seed: int,
    singular: str = "mixed",
    tol: ToleranceConfig = DEFAULT_TOL,
    timing: bool = False,
) -> RandomRun:
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    records = []
    times = []
    n_ok = 0
    worst = 0.0
    counts: Counter[str] = Counter()
    branches: Counter[str] = Counter()
    for i, kind in enumerate(class_schedule(count, singular)):
        planted = planted_system(rng, kind)
        report = solve(planted.system, tol)
        ok, res = recovered(planted, report)
        n_ok += ok
        if math.isfinite(res):
            worst = max(worst, res)
        times.append(report.elapsed)
        n_sol = "family" if report.solutions.is_family else str(len(report.solutions))
        counts[n_sol] += 1
        branches[report.branch] += 1
        records.append({"index": i, "kind": kind, "report": report, "success": ok})

    summary = {
        "count": count,
        "seed": seed,
        "singular": singular,
        "success_rate": n_ok / count,
        "n_success": n_ok,
        "max_residual": worst,
        "solution_count_histogram": dict(sorted(counts.items())),
        "branch_histogram": dict(sorted(branches.items())),
    }
    if timing:
        summary["mean_time_s"] = statistics.fmean(times)
        summary["median_time_s"] = statistics.median(times)
    return RandomRun(records, summary)

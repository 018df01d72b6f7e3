"""Top-level solver: pick the branch from B's conditioning and run it."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .core import (
    DEFAULT_TOL,
    SolutionSet,
    SolutionTag,
    ToleranceConfig,
    TrigSystem,
    validate_and_dedup,
)
from .generic import solve_generic
from .quartic import singular_threshold
from .singular import rank_of, solve_rank0, solve_rank1

BRANCHES = ("generic", "rank0", "rank1")


@dataclass(frozen=True)
class SolveReport:
    solutions: SolutionSet
    branch: str
    det_B: float
    rank_B: int
    max_residual: float
    elapsed: float

    @property
    def status(self) -> str:
        return self.solutions.tag.value


def solve(system: TrigSystem, tol: ToleranceConfig = DEFAULT_TOL) -> SolveReport:
    """Solve ``A u(theta1) + B u(theta2) = C`` for every (theta1, theta2).

    |det B| above ``eps_det * max(1, ||B||_inf^2)`` takes the quartic path;
    otherwise the SVD rank of B selects the rank-0 or rank-1 solver.  When the
    determinant test flags B but the SVD still resolves two singular values,
    the smaller one is dropped and the rank-1 solver runs.
    """
    start = time.perf_counter()
    B = system.B
    det = B.det()
    if abs(det) > singular_threshold(B, tol):
        branch, rank = "generic", 2
        result = solve_generic(system, tol)
    else:
        info = rank_of(B, tol)
        if info.rank == 0:
            branch, rank = "rank0", 0
            result = solve_rank0(system, tol)
        else:
            branch, rank = "rank1", 1
            result = solve_rank1(system, info, tol)
    if result.tag is SolutionTag.FINITE:
        result = validate_and_dedup(result.solutions, system, tol)
    elapsed = time.perf_counter() - start
    max_res = max((s.residual for s in result.solutions), default=0.0)
    return SolveReport(result, branch, det, rank, max_res, elapsed)


__all__ = ["BRANCHES", "SolveReport", "solve", "validate_and_dedup"]

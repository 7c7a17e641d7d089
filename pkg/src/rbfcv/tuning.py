"""Shape-parameter selection: log-spaced epsilon grid, per-epsilon CV sweep,
and argmin selection of the validation-error norm."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .collocation import CollocationProblem
from .crossval import (
    FoldPartition,
    empirical_loocv,
    exact_cv,
    loocv_partition,
    surrogate_cv,
)
from .errors import AllEpsilonFailedError, RbfCvError

EXACT = "exact"
SURROGATE = "surrogate"
EMPIRICAL = "empirical"
STRATEGIES = (EXACT, SURROGATE, EMPIRICAL)


@dataclass(frozen=True)
class EpsilonGrid:
    """Base-2 log-equispaced shape parameters, endpoints included."""

    min_exp: float = -5.0
    max_exp: float = 5.0
    count: int = 100

    def values(self) -> np.ndarray:
        return 2.0 ** np.linspace(self.min_exp, self.max_exp, self.count)


@dataclass
class SweepResult:
    """Per-epsilon validation norms for one strategy, plus the argmin."""

    grid: EpsilonGrid
    strategy: str
    epsilons: np.ndarray
    norms: np.ndarray                 # NaN where the grid point failed
    times: np.ndarray                 # per-epsilon CV wall time
    best_index: int                   # 0-based grid position
    best_epsilon: float
    best_norm: float
    total_time: float                 # sum of per-epsilon CV wall times
    assembly_time: float
    failures: list[tuple[int, str]] = field(default_factory=list)


def _argmin_valid(norms: np.ndarray) -> int:
    """First finite minimum; ties resolve to the smaller epsilon."""
    valid = np.isfinite(norms)
    if not valid.any():
        raise AllEpsilonFailedError("every epsilon grid point failed")
    masked = np.where(valid, norms, np.inf)
    return int(np.argmin(masked))


def sweep(build_problem: Callable[[float], CollocationProblem], strategy: str,
          folds: FoldPartition | None = None,
          grid: EpsilonGrid | None = None) -> SweepResult:
    """Run one CV strategy over every epsilon on the grid.

    ``build_problem`` maps a shape parameter to a fresh problem on fixed
    geometry.  ``folds`` defaults to leave-one-out; the empirical strategy
    accepts nothing else.  Grid points that raise or produce a non-finite
    norm are recorded as failures and excluded from the argmin.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    grid = grid or EpsilonGrid()
    eps = grid.values()
    norms = np.full(grid.count, np.nan)
    times = np.zeros(grid.count)
    failures: list[tuple[int, str]] = []
    assembly_time = 0.0
    local_folds = folds
    for i, e in enumerate(eps):
        p = build_problem(float(e))
        if local_folds is None and strategy != EMPIRICAL:
            local_folds = loocv_partition(p.m)
        if strategy == EMPIRICAL:
            if folds is not None and folds.k != p.m:
                raise ValueError("empirical LOOCV requires k = m folds")
            if p.m != p.n:
                raise ValueError("empirical LOOCV needs a square collocation matrix")
        try:
            if strategy == EXACT:
                report = exact_cv(p, local_folds)
            elif strategy == SURROGATE:
                report = surrogate_cv(p, local_folds)
            else:
                report = empirical_loocv(p)
        except (RbfCvError, np.linalg.LinAlgError) as exc:
            failures.append((i, f"{type(exc).__name__}: {exc}"))
            continue
        assembly_time += report.assembly_time
        times[i] = report.wall_time
        if np.isfinite(report.l2_norm):
            norms[i] = report.l2_norm
        else:
            failures.append((i, "non-finite validation norm"))
    best = _argmin_valid(norms)
    return SweepResult(
        grid=grid,
        strategy=strategy,
        epsilons=eps,
        norms=norms,
        times=times,
        best_index=best,
        best_epsilon=float(eps[best]),
        best_norm=float(norms[best]),
        total_time=float(times.sum()),
        assembly_time=assembly_time,
        failures=failures,
    )


def select_best(result: SweepResult) -> tuple[float, float]:
    """(best epsilon, best norm) over the non-failed grid points."""
    best = _argmin_valid(result.norms)
    return float(result.epsilons[best]), float(result.norms[best])

"""Benchmark experiment runners: four reproduction studies plus a custom sweep.

Every runner writes plain CSV files (one per table/figure panel) and a JSON
summary into the configured output directory.  Numeric CSV cells use
``repr`` so re-parsing restores exact values; timing columns are wall-clock
seconds and are the only columns expected to differ between identical runs.
"""

from __future__ import annotations

import csv
import json
import math
from contextlib import contextmanager
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .collocation import CollocationProblem, build_hermite, build_kansa
from .crossval import FoldPartition, partition_folds, fold_exactness_residuals
from .errors import UnsupportedKernelError
from .geometry import boundary_equispaced, combine, exterior_centers, halton2d, write_points_csv
from .kernels import IMQ, MATERN2, LaplacianMode, RbfKernel
from .tuning import EMPIRICAL, EXACT, STRATEGIES, SURROGATE, EpsilonGrid, SweepResult, sweep

SUPPORTED_MU = (16, 64, 144, 256, 400, 576, 784, 1024)
TEST_IDS = ("test1", "test2", "test3", "test4", "custom")


@dataclass
class ExperimentConfig:
    test_id: str = "custom"
    mu: int = 256
    kernel: str = MATERN2
    method: str = "kansa"               # kansa | hermite
    centers: str = "coincident"         # coincident | exterior
    k_folds: int | None = None          # None -> leave-one-out
    seed: int = 0
    laplacian_mode: str = "classic"     # classic | analytic2d
    fold_scheme: str = "contiguous"     # contiguous | shuffled
    strategy: str = SURROGATE           # custom runs only
    boundary_count: int | None = None   # None -> per-test default
    out_dir: str = "results"
    mu_list: tuple[int, ...] | None = None   # test1 sizes
    grid_min_exp: float = -5.0
    grid_max_exp: float = 5.0
    grid_count: int = 100
    single_thread: bool = True

    def validate(self) -> None:
        if self.test_id not in TEST_IDS:
            raise ValueError(f"unknown test id {self.test_id!r}")
        for mu in (self.mu, *(self.mu_list or ())):
            if mu not in SUPPORTED_MU:
                raise ValueError(
                    f"mu must be a perfect square from the supported list {SUPPORTED_MU}, got {mu}"
                )
        if self.kernel not in (MATERN2, IMQ):
            raise ValueError(f"unknown kernel family {self.kernel!r}")
        if self.method not in ("kansa", "hermite"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.centers not in ("coincident", "exterior"):
            raise ValueError(f"unknown centers mode {self.centers!r}")
        if self.method == "hermite" and self.kernel != IMQ:
            raise UnsupportedKernelError(
                "the hermite method needs an iterated Laplacian, which only the imq family provides"
            )
        if self.centers == "exterior" and self.method != "kansa":
            raise ValueError("exterior centers require the kansa method")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == EMPIRICAL and self.centers == "exterior":
            raise ValueError("empirical LOOCV needs a square collocation matrix")
        if self.strategy == EMPIRICAL and self.k_folds is not None:
            raise ValueError("empirical LOOCV is leave-one-out only; omit k_folds")
        if self.k_folds is not None and self.k_folds < 2:
            raise ValueError("k_folds must be at least 2")
        if self.grid_count < 1:
            raise ValueError("grid_count must be positive")
        if self.boundary_count is not None and self.boundary_count < 1:
            raise ValueError("boundary_count must be positive")

    @property
    def grid(self) -> EpsilonGrid:
        return EpsilonGrid(self.grid_min_exp, self.grid_max_exp, self.grid_count)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "mu_list" in data and data["mu_list"] is not None:
            data = {**data, "mu_list": tuple(data["mu_list"])}
        return cls(**data)


@contextmanager
def _thread_limit(single_thread: bool):
    if single_thread:
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=1):
            yield
    else:
        yield


def _default_boundary_count(config: ExperimentConfig, mu: int) -> int:
    if config.boundary_count is not None:
        return config.boundary_count
    root = math.isqrt(mu)
    # The reference symmetric-collocation results correspond to a ring with
    # root points per side; everything else uses root points in total.
    return 4 * root if config.test_id == "test2" else root


def make_geometry(config: ExperimentConfig, mu: int | None = None):
    """(X, Y) point sets for one experiment size."""
    mu = config.mu if mu is None else mu
    nb = _default_boundary_count(config, mu)
    boundary = boundary_equispaced(nb)
    X = combine(halton2d(mu), boundary)
    if config.centers == "exterior":
        Y = combine(X, exterior_centers(boundary, offset=4.0 / nb))
    else:
        Y = X
    return X, Y


def problem_builder(config: ExperimentConfig, mu: int | None = None):
    """Closure mapping a shape parameter to a collocation problem."""
    X, Y = make_geometry(config, mu)
    mode = LaplacianMode(config.laplacian_mode)
    if config.method == "hermite":
        def build(eps: float) -> CollocationProblem:
            return build_hermite(X, RbfKernel(IMQ, eps, mode))
    else:
        def build(eps: float) -> CollocationProblem:
            return build_kansa(X, Y, RbfKernel(config.kernel, eps, mode))
    return build, X, Y


def make_folds(config: ExperimentConfig, m: int, k: int | None = None) -> FoldPartition:
    k = k if k is not None else (config.k_folds or m)
    return partition_folds(m, k, config.fold_scheme, config.seed)


# --- CSV helpers --------------------------------------------------------------


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) and not math.isfinite(x):
        return "nan"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])


SWEEP_HEADER = [
    "epsilon",
    "norm_exact", "norm_surrogate", "norm_empirical",
    "time_exact", "time_surrogate", "time_empirical",
]


def write_sweep_csv(path: Path, sweeps: dict[str, SweepResult]) -> None:
    """Merged per-epsilon table across strategies (missing columns stay empty)."""
    some = next(iter(sweeps.values()))
    rows = []
    for i, eps in enumerate(some.epsilons):
        row = [float(eps)]
        for strat in (EXACT, SURROGATE, EMPIRICAL):
            r = sweeps.get(strat)
            row.append(None if r is None else float(r.norms[i]))
        for strat in (EXACT, SURROGATE, EMPIRICAL):
            r = sweeps.get(strat)
            row.append(None if r is None else float(r.times[i]))
        rows.append(row)
    _write_csv(path, SWEEP_HEADER, rows)


def read_csv_table(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _norm_gap(sweeps: dict[str, SweepResult], strat: str, at_index: int) -> float:
    """|norm_exact - norm_strat| evaluated at one grid index."""
    a = sweeps[EXACT].norms[at_index]
    b = sweeps[strat].norms[at_index]
    return float(abs(a - b))


def _summary_entry(r: SweepResult) -> dict:
    return {
        "best_epsilon": r.best_epsilon,
        "best_norm": r.best_norm,
        "best_index": r.best_index,
        "cv_time": r.total_time,
        "assembly_time": r.assembly_time,
        "failures": len(r.failures),
    }


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)


# --- experiment runners -------------------------------------------------------


def run_test1(config: ExperimentConfig) -> dict:
    """LOOCV timing and accuracy comparison across problem sizes.

    For every mu: sweeps of the exact, surrogate and empirical strategies,
    recording sweep times, each strategy's selected epsilon, and the gaps
    between the exact validation norm and the other two at the exact
    scheme's selected epsilon.
    """
    config.validate()
    out = Path(config.out_dir)
    mu_list = config.mu_list or (16, 64, 144, 256)
    rows = []
    per_mu = {}
    for mu in mu_list:
        build, X, _ = problem_builder(config, mu)
        m = len(X.points)
        sweeps = {}
        with _thread_limit(config.single_thread):
            for strat in (EXACT, SURROGATE, EMPIRICAL):
                sweeps[strat] = sweep(build, strat, grid=config.grid)
        i_star = sweeps[EXACT].best_index
        rows.append([
            mu, m,
            sweeps[EXACT].best_epsilon, sweeps[SURROGATE].best_epsilon, sweeps[EMPIRICAL].best_epsilon,
            sweeps[EXACT].best_norm, sweeps[SURROGATE].best_norm, sweeps[EMPIRICAL].best_norm,
            _norm_gap(sweeps, SURROGATE, i_star), _norm_gap(sweeps, EMPIRICAL, i_star),
            sweeps[EXACT].total_time, sweeps[SURROGATE].total_time, sweeps[EMPIRICAL].total_time,
        ])
        write_sweep_csv(out / f"test1_{config.kernel}_mu{mu}_sweep.csv", sweeps)
        per_mu[str(mu)] = {s: _summary_entry(r) for s, r in sweeps.items()}
    _write_csv(
        out / f"test1_{config.kernel}_summary.csv",
        ["mu", "m",
         "best_eps_exact", "best_eps_surrogate", "best_eps_empirical",
         "best_norm_exact", "best_norm_surrogate", "best_norm_empirical",
         "gap_surrogate", "gap_empirical",
         "time_exact", "time_surrogate", "time_empirical"],
        rows,
    )
    summary = {"config": json.loads(config.to_json()), "per_mu": per_mu}
    _write_json(out / f"test1_{config.kernel}_summary.json", summary)
    return summary


def run_test2(config: ExperimentConfig) -> dict:
    """Symmetric-collocation table: three LOOCV strategies on one problem."""
    config = _with(config, method="hermite", kernel=IMQ, centers="coincident", test_id="test2")
    config.validate()
    if config.mu != 256:
        raise ValueError("test2 is defined for mu=256")
    out = Path(config.out_dir)
    build, X, _ = problem_builder(config)
    sweeps = {}
    with _thread_limit(config.single_thread):
        for strat in (EXACT, SURROGATE, EMPIRICAL):
            sweeps[strat] = sweep(build, strat, grid=config.grid)
    rows = [[strat.capitalize(), sweeps[strat].best_norm, sweeps[strat].best_epsilon]
            for strat in (EXACT, SURROGATE, EMPIRICAL)]
    _write_csv(out / "test2_table.csv",
               ["strategy", "best_validation_error", "best_epsilon"], rows)
    write_sweep_csv(out / "test2_sweep.csv", sweeps)
    summary = {"config": json.loads(config.to_json()),
               "table": {s: _summary_entry(r) for s, r in sweeps.items()},
               "m": len(X.points)}
    _write_json(out / "test2_summary.json", summary)
    return summary


def run_test3(config: ExperimentConfig) -> dict:
    """Non-square table: exact and surrogate with an exterior center ring."""
    config = _with(config, method="kansa", kernel=MATERN2, centers="exterior", test_id="test3")
    config.validate()
    out = Path(config.out_dir)
    build, X, Y = problem_builder(config)
    sweeps = {}
    with _thread_limit(config.single_thread):
        for strat in (EXACT, SURROGATE):
            sweeps[strat] = sweep(build, strat, grid=config.grid)
    rows = [[strat.capitalize(), sweeps[strat].best_norm, sweeps[strat].best_epsilon]
            for strat in (EXACT, SURROGATE)]
    rows.append(["Empirical", "n/a", "n/a"])  # not applicable: G is not square
    _write_csv(out / "test3_table.csv",
               ["strategy", "best_validation_error", "best_epsilon"], rows)
    write_sweep_csv(out / "test3_sweep.csv", sweeps)
    summary = {"config": json.loads(config.to_json()),
               "table": {s: _summary_entry(r) for s, r in sweeps.items()},
               "m": len(X.points), "n": len(Y.points)}
    _write_json(out / "test3_summary.json", summary)
    return summary


def run_test4(config: ExperimentConfig) -> dict:
    """Fold-count study: exact vs surrogate CV for k = m, m/2, ..., m/128."""
    config = _with(config, method="kansa", kernel=MATERN2, centers="coincident", test_id="test4")
    config.validate()
    if config.mu != 256:
        raise ValueError("test4 is defined for mu=256")
    out = Path(config.out_dir)
    build, X, _ = problem_builder(config)
    m = len(X.points)
    ks = [m // (2 ** i) for i in range(8)]
    rows = []
    per_k = {}
    for k in ks:
        folds = make_folds(config, m, k)
        sweeps = {}
        with _thread_limit(config.single_thread):
            for strat in (EXACT, SURROGATE):
                sweeps[strat] = sweep(build, strat, folds=folds, grid=config.grid)
        i_star = sweeps[EXACT].best_index
        gap = _norm_gap(sweeps, SURROGATE, i_star)
        rows.append([
            k,
            sweeps[EXACT].best_epsilon, sweeps[SURROGATE].best_epsilon,
            sweeps[EXACT].best_norm, sweeps[SURROGATE].best_norm,
            gap,
            sweeps[EXACT].total_time, sweeps[SURROGATE].total_time,
        ])
        per_k[str(k)] = {s: _summary_entry(r) for s, r in sweeps.items()}
        per_k[str(k)]["gap_at_exact_best"] = gap
    _write_csv(
        out / "test4_kfold.csv",
        ["k", "best_eps_exact", "best_eps_surrogate", "best_norm_exact",
         "best_norm_surrogate", "gap_surrogate", "time_exact", "time_surrogate"],
        rows,
    )
    summary = {"config": json.loads(config.to_json()), "per_k": per_k}
    _write_json(out / "test4_summary.json", summary)
    return summary


def run_custom(config: ExperimentConfig) -> dict:
    """One sweep with a caller-chosen method/kernel/centers/fold setup."""
    config.validate()
    out = Path(config.out_dir)
    build, X, Y = problem_builder(config)
    m = len(X.points)
    folds = make_folds(config, m)
    with _thread_limit(config.single_thread):
        result = sweep(build, config.strategy,
                       folds=None if config.strategy == EMPIRICAL else folds,
                       grid=config.grid)
    write_sweep_csv(out / "custom_sweep.csv", {config.strategy: result})
    out.mkdir(parents=True, exist_ok=True)
    write_points_csv(Y, out / "custom_points.csv")
    # Residual diagnostic at the selected epsilon, fold by fold.
    residuals = fold_exactness_residuals(build(result.best_epsilon), folds)
    summary = {
        "config": json.loads(config.to_json()),
        "m": m,
        "n": len(Y.points),
        "strategy": config.strategy,
        "best_epsilon": result.best_epsilon,
        "best_norm": result.best_norm,
        "cv_time": result.total_time,
        "assembly_time": result.assembly_time,
        "failures": [[int(i), msg] for i, msg in result.failures],
        "residual_stats": {
            "min": float(residuals.min()),
            "mean": float(residuals.mean()),
            "max": float(residuals.max()),
        },
    }
    _write_json(out / "custom_summary.json", summary)
    return summary


def _with(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    data = asdict(config)
    data.update(overrides)
    return ExperimentConfig.from_dict(data)


RUNNERS = {
    "test1": run_test1,
    "test2": run_test2,
    "test3": run_test3,
    "test4": run_test4,
    "custom": run_custom,
}

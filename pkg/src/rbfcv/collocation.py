"""Generalized-interpolation collocation: functional lists, matrix assembly,
and the Poisson test problem on the unit square.

A collocation problem pairs a row list of functionals (``gammas``, applied to
the kernel's first argument) with a column list (``lambdas``, applied to the
second argument).  The collocation matrix G carries the gamma kinds on its
rows; the evaluation matrix L replaces every row kind by point evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedKernelError
from .geometry import PointRole, PointSet
from .kernels import IMQ, FunctionalKind, RbfKernel


@dataclass(frozen=True)
class Functional:
    """A point paired with the functional kind acting there."""

    point: tuple[float, float]
    kind: FunctionalKind

    def __post_init__(self):
        object.__setattr__(self, "point", (float(self.point[0]), float(self.point[1])))


@dataclass
class CollocationProblem:
    """Rows (gammas), columns (lambdas), kernel, data g, and ground truth h."""

    gammas: list[Functional]
    lambdas: list[Functional]
    kernel: RbfKernel
    g: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        self.g = np.asarray_chkfinite(self.g, dtype=float)
        self.h = np.asarray_chkfinite(self.h, dtype=float)
        if not (len(self.gammas) >= 1):
            raise ValueError("need at least one collocation functional")
        if len(self.lambdas) < len(self.gammas):
            raise ValueError("centers must extend collocation points (n >= m)")
        if self.g.shape != (self.m,) or self.h.shape != (self.m,):
            raise ValueError("g and h must both have length m")

    @property
    def m(self) -> int:
        return len(self.gammas)

    @property
    def n(self) -> int:
        return len(self.lambdas)


# --- Poisson test problem ---------------------------------------------------
#
#   Lap u = -(5/4) pi^2 sin(pi x1) cos(pi x2 / 2)   on (0,1)^2
#   u = sin(pi x1) on the bottom edge (x2 = 0), u = 0 on the rest of the
#   boundary; closed-form solution u = sin(pi x1) cos(pi x2 / 2).


def exact_u(points):
    """Closed-form solution, vectorized over trailing coordinate pairs."""
    p = np.asarray(points, dtype=float)
    return np.sin(np.pi * p[..., 0]) * np.cos(np.pi * p[..., 1] / 2.0)


def forcing(points):
    """Laplacian of the closed-form solution."""
    return -1.25 * np.pi**2 * exact_u(points)


def rhs_value(f: Functional) -> float:
    """Right-hand-side datum for one functional of the Poisson test problem."""
    x1, x2 = f.point
    if f.kind is FunctionalKind.LAPLACIAN:
        return float(forcing(f.point))
    on_boundary = min(x1, x2, 1.0 - x1, 1.0 - x2) <= 1e-12
    if on_boundary:
        return float(np.sin(np.pi * x1)) if x2 <= 1e-12 else 0.0
    # Interior point evaluation: interpolate the known solution.
    return float(exact_u(f.point))


# --- problem builders -------------------------------------------------------


def _collocation_functionals(X: PointSet) -> list[Functional]:
    fns = []
    for pt, role in zip(X.points, X.roles):
        if role is PointRole.EXTERIOR_CENTER:
            raise ValueError("collocation points must be interior or boundary")
        kind = FunctionalKind.LAPLACIAN if role is PointRole.INTERIOR else FunctionalKind.DELTA
        fns.append(Functional(tuple(pt), kind))
    return fns


def _check_leading_block(X: PointSet, Y: PointSet) -> None:
    if len(Y) < len(X) or not np.array_equal(Y.points[: len(X)], X.points):
        raise ValueError("centers must contain the collocation points as leading block")


def build_kansa(X: PointSet, Y: PointSet, kernel: RbfKernel) -> CollocationProblem:
    """Unsymmetric collocation: PDE rows at interior points, data rows on the
    boundary, point-evaluation functionals at every center.

    ``Y`` must start with the points of ``X``; any additional centers (for
    example an exterior ring) occupy the trailing columns.
    """
    _check_leading_block(X, Y)
    gammas = _collocation_functionals(X)
    lambdas = [Functional(tuple(pt), FunctionalKind.DELTA) for pt in Y.points]
    g = np.array([rhs_value(f) for f in gammas])
    h = exact_u(X.points)
    return CollocationProblem(gammas, lambdas, kernel, g, h)


def build_hermite(X: PointSet, kernel: RbfKernel) -> CollocationProblem:
    """Symmetric collocation: the same operator functionals on rows and columns.

    Requires a kernel family with an iterated Laplacian (IMQ), because the
    interior/interior block applies the Laplacian to both kernel arguments.
    """
    if kernel.family != IMQ:
        raise UnsupportedKernelError(
            "symmetric collocation needs the iterated Laplacian; use the imq family"
        )
    gammas = _collocation_functionals(X)
    g = np.array([rhs_value(f) for f in gammas])
    h = exact_u(X.points)
    return CollocationProblem(gammas, list(gammas), kernel, g, h)


def build_interpolation(X: PointSet, kernel: RbfKernel, values: np.ndarray) -> CollocationProblem:
    """Plain interpolation of ``values``: delta functionals everywhere, g = h."""
    gammas = [Functional(tuple(pt), FunctionalKind.DELTA) for pt in X.points]
    values = np.asarray(values, dtype=float)
    return CollocationProblem(gammas, list(gammas), kernel, values, values.copy())


# --- assembly ---------------------------------------------------------------


def _assemble(kernel: RbfKernel, rows: list[Functional], cols: list[Functional],
              force_delta_rows: bool = False) -> np.ndarray:
    xp = np.array([f.point for f in rows])
    yp = np.array([f.point for f in cols])
    r = np.sqrt(((xp[:, None, :] - yp[None, :, :]) ** 2).sum(axis=-1))
    if force_delta_rows:
        row_kinds = np.zeros(len(rows), dtype=bool)
    else:
        row_kinds = np.array([f.kind is FunctionalKind.LAPLACIAN for f in rows])
    col_kinds = np.array([f.kind is FunctionalKind.LAPLACIAN for f in cols])
    out = np.empty_like(r)
    for rk in (False, True):
        rmask = row_kinds == rk
        if not rmask.any():
            continue
        for ck in (False, True):
            cmask = col_kinds == ck
            if not cmask.any():
                continue
            sel = np.ix_(rmask, cmask)
            left = FunctionalKind.LAPLACIAN if rk else FunctionalKind.DELTA
            right = FunctionalKind.LAPLACIAN if ck else FunctionalKind.DELTA
            out[sel] = kernel.pair_profile(left, right, r[sel])
    return out


def assemble_G(p: CollocationProblem) -> np.ndarray:
    """Collocation matrix: gamma kinds on rows, lambda kinds on columns."""
    return _assemble(p.kernel, p.gammas, p.lambdas)


def assemble_L(p: CollocationProblem) -> np.ndarray:
    """Evaluation matrix: point evaluation on rows, lambda kinds on columns."""
    return _assemble(p.kernel, p.gammas, p.lambdas, force_delta_rows=True)


def rbf_ps_solve(p: CollocationProblem) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients c and the reconstruction f = L c at the collocation points.

    Square systems go through a conditioning-guarded LU solve; rectangular
    ones (extra centers) take the minimum-norm least-squares solution.
    """
    from . import linalg

    G = assemble_G(p)
    L = assemble_L(p)
    c = linalg.guarded_solve(G, p.g)
    return c, L @ c


def problem_summary(p: CollocationProblem) -> dict:
    """JSON-ready key/value description of a problem configuration."""
    n_pde = sum(f.kind is FunctionalKind.LAPLACIAN for f in p.gammas)
    return {
        "kernel_family": p.kernel.family,
        "epsilon": p.kernel.epsilon,
        "laplacian_mode": p.kernel.laplacian_mode.value,
        "m": p.m,
        "n": p.n,
        "pde_rows": int(n_pde),
        "data_rows": int(p.m - n_pde),
        "symmetric": p.gammas == p.lambdas,
    }


def problem_summary_json(p: CollocationProblem) -> str:
    return json.dumps(problem_summary(p), indent=2, sort_keys=True)

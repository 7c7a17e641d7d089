"""Fold partitioning and the three cross-validation engines.

Given a collocation problem with matrices G (collocation) and L (evaluation),
data g and ground truth h, a k-fold split of the collocation indices is
scored three ways:

* ``exact_cv``      -- refit on every training subset and evaluate the held
  out points directly: e = h_p - L[p, tau] @ pinv(G[t, tau]) @ g[t].
* ``surrogate_cv``  -- invert G and L once, then recover each fold's
  validation values from restricted columns of the inverses; exact whenever
  a per-fold projector residual vanishes (see ``fold_exactness_residual``) and far
  cheaper than refitting when the number of folds is large.
* ``empirical_loocv`` -- the classical interpolation shortcut
  eta = c / diag(inv(G)), applied verbatim to the collocation matrix.  Exact
  for pure interpolation, heuristic otherwise; square G and k = m only.

When centers extend the collocation points (n > m) the trailing centers are
kept in every training set and plain inverses become pseudoinverses.

Fold index vectors are 1-based at this boundary, matching the restriction
notation used throughout; reports carry signed errors in point order.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from . import linalg
from .collocation import CollocationProblem, assemble_G, assemble_L
from .errors import (
    InvalidFoldCountError,
    SingularMatrixError,
    SingularSubmatrixError,
    ZeroDiagonalError,
)
from .kernels import FunctionalKind, kernel_entry

CONTIGUOUS = "contiguous"
SHUFFLED = "shuffled"

# Diagonal entries of an inverse below this times its max entry count as zero.
DIAG_RTOL = 1e-15


@dataclass
class FoldPartition:
    """k disjoint, non-empty 1-based index vectors covering 1..m."""

    m: int
    folds: list[np.ndarray]

    def __post_init__(self):
        self.folds = [np.asarray(f, dtype=int) for f in self.folds]
        flat = np.concatenate(self.folds) if self.folds else np.array([], dtype=int)
        if any(f.size == 0 for f in self.folds):
            raise InvalidFoldCountError("folds must be non-empty")
        if flat.size != self.m or np.setdiff1d(np.arange(1, self.m + 1), flat).size:
            raise InvalidFoldCountError("folds must partition 1..m")
        if np.unique(flat).size != flat.size:
            raise InvalidFoldCountError("folds must be pairwise disjoint")

    @property
    def k(self) -> int:
        return len(self.folds)


def partition_folds(m: int, k: int, scheme: str = CONTIGUOUS,
                    seed: int | None = None) -> FoldPartition:
    """Split 1..m into k folds whose sizes differ by at most one.

    ``contiguous`` slices the index range in order; ``shuffled`` slices a
    seeded permutation, so the same seed reproduces the same folds.
    """
    if not 1 <= k <= m:
        raise InvalidFoldCountError(f"need 1 <= k <= m, got k={k}, m={m}")
    if scheme == CONTIGUOUS:
        order = np.arange(1, m + 1)
    elif scheme == SHUFFLED:
        order = np.random.default_rng(seed).permutation(m) + 1
    else:
        raise ValueError(f"unknown fold scheme {scheme!r}")
    base, extra = divmod(m, k)
    folds, start = [], 0
    for ell in range(k):
        size = base + (1 if ell < extra else 0)
        folds.append(order[start:start + size])
        start += size
    return FoldPartition(m, folds)


def loocv_partition(m: int) -> FoldPartition:
    return partition_folds(m, m)


@dataclass
class CVReport:
    """Signed validation errors with their fold slices and timing."""

    errors: np.ndarray            # length m, point order
    per_fold: list[np.ndarray]    # slices of `errors` in fold order
    l2_norm: float
    wall_time: float              # CV computation only
    strategy: str
    assembly_time: float = 0.0    # matrix assembly, reported separately

    @classmethod
    def _build(cls, errors, folds, strategy, wall_time, assembly_time):
        per_fold = [errors[f - 1] for f in folds.folds]
        return cls(errors, per_fold, float(np.linalg.norm(errors)),
                   wall_time, strategy, assembly_time)


def write_report_csv(report: CVReport, folds: FoldPartition, path) -> None:
    """CSV rows (fold_index, point_index, signed_error) plus summary rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fold_index", "point_index", "signed_error"])
        for ell, fold in enumerate(folds.folds, start=1):
            for p in fold:
                writer.writerow([ell, int(p), repr(float(report.errors[p - 1]))])
        writer.writerow(["summary", "l2_norm", repr(report.l2_norm)])
        writer.writerow(["summary", "wall_time", repr(report.wall_time)])


def _assembled(p: CollocationProblem):
    t0 = time.perf_counter()
    G = assemble_G(p)
    L = assemble_L(p)
    return G, L, time.perf_counter() - t0


def _fold_indices(p: CollocationProblem, folds: FoldPartition):
    if folds.m != p.m:
        raise InvalidFoldCountError(
            f"partition covers 1..{folds.m} but the problem has m={p.m}"
        )
    return [f - 1 for f in folds.folds]


# --- surrogate engine ---------------------------------------------------------


def _surrogate_alpha_loocv(Gi, Li, c, m):
    """All leave-one-out alpha values at once.

    For a single validation index the least-squares step collapses to dot
    products: alpha_p = <Li[:,p], Gi[:,p]> * c_p / (Gi[p,p] * ||Li[:,p]||^2).
    """
    diag = np.diagonal(Gi)[:m].copy()
    if np.abs(diag).min() < DIAG_RTOL * np.abs(Gi).max():
        raise SingularSubmatrixError("a diagonal entry of the inverse is numerically zero")
    num = np.einsum("ij,ij->j", Li[:, :m], Gi[:, :m])
    den = np.einsum("ij,ij->j", Li[:, :m], Li[:, :m])
    alpha = num * c[:m] / (diag * den)
    if not np.all(np.isfinite(alpha)):
        raise SingularSubmatrixError("degenerate leave-one-out fold")
    return alpha


def _surrogate_alpha_fold(Gi, Li, c, idx):
    """Least-squares alpha for one fold of validation indices ``idx`` (0-based)."""
    block = Gi[np.ix_(idx, idx)]
    try:
        beta = linalg.solve(block, c[idx])
    except SingularMatrixError as exc:
        raise SingularSubmatrixError(f"fold block is singular: {exc}") from exc
    y = Gi[:, idx] @ beta
    alpha, *_ = np.linalg.lstsq(Li[:, idx], y, rcond=linalg.PINV_RTOL)
    return alpha


def surrogate_cv(p: CollocationProblem, folds: FoldPartition) -> CVReport:
    """Surrogate k-fold CV from restricted columns of the (pseudo)inverses.

    Computes inv(G), inv(L) (pseudoinverses when n > m or G is too ill
    conditioned), c = Gi @ g and f = L @ c once; each fold then costs a v x v
    solve plus one least-squares fit instead of a full refit.  The signed
    error estimate at the validated positions is alpha - f + h.
    """
    G, L, t_asm = _assembled(p)
    idx_list = _fold_indices(p, folds)
    t0 = time.perf_counter()
    Gi = linalg.inverse_or_pinv(G)
    Li = linalg.inverse_or_pinv(L)
    c = Gi @ p.g
    f = L @ c
    errors = np.empty(p.m)
    if all(ix.size == 1 for ix in idx_list):
        alpha = _surrogate_alpha_loocv(Gi, Li, c, p.m)
        errors[:] = alpha - f + p.h
    else:
        for ix in idx_list:
            alpha = _surrogate_alpha_fold(Gi, Li, c, ix)
            errors[ix] = alpha - f[ix] + p.h[ix]
    wall = time.perf_counter() - t0
    return CVReport._build(errors, folds, "surrogate", wall, t_asm)


def surrogate_loocv_closed_form(p: CollocationProblem) -> CVReport:
    """Leave-one-out surrogate CV via the scalar-divisor form.

    With a single validation index the fold block of inv(G) is the scalar
    Gi[p, p], so alpha_p reduces to a ratio of dot products; the assembly
    alpha - f + h is unchanged.  Requires a square system.
    """
    if p.m != p.n:
        raise ValueError("closed-form LOOCV needs coincident points and centers (m = n)")
    G, L, t_asm = _assembled(p)
    t0 = time.perf_counter()
    Gi = linalg.inverse_or_pinv(G)
    Li = linalg.inverse_or_pinv(L)
    c = Gi @ p.g
    f = L @ c
    scale = np.abs(Gi).max()
    alpha = np.empty(p.m)
    for j in range(p.m):
        gjj = Gi[j, j]
        if abs(gjj) < DIAG_RTOL * scale:
            raise SingularSubmatrixError("a diagonal entry of the inverse is numerically zero")
        u = Li[:, j]
        alpha[j] = (u @ Gi[:, j]) * (c[j] / gjj) / (u @ u)
    errors = alpha - f + p.h
    wall = time.perf_counter() - t0
    return CVReport._build(errors, loocv_partition(p.m), "surrogate", wall, t_asm)


def _fold_residual(Gi, Li, c, idx) -> float:
    block = Gi[np.ix_(idx, idx)]
    try:
        beta = linalg.solve(block, c[idx])
    except SingularMatrixError as exc:
        raise SingularSubmatrixError(f"fold block is singular: {exc}") from exc
    y = Gi[:, idx] @ beta
    U = Li[:, idx]
    alpha, *_ = np.linalg.lstsq(U, y, rcond=linalg.PINV_RTOL)
    return float(np.linalg.norm(U @ alpha - y))


def fold_exactness_residual(p: CollocationProblem, fold) -> float:
    """Projector residual that certifies fold-exactness of the surrogate.

    Returns || (U @ pinv(U) - I) y ||_2 with U the fold's columns of inv(L)
    and y the restricted-inverse vector the fold's alpha is fitted to; the
    surrogate error equals the exact one on this fold when it vanishes.
    """
    idx = np.asarray(fold, dtype=int) - 1
    if idx.min() < 0 or idx.max() >= p.m:
        raise InvalidFoldCountError("fold indices must lie in 1..m")
    Gi = linalg.inverse_or_pinv(assemble_G(p))
    Li = linalg.inverse_or_pinv(assemble_L(p))
    return _fold_residual(Gi, Li, Gi @ p.g, idx)


def fold_exactness_residuals(p: CollocationProblem, folds: FoldPartition) -> np.ndarray:
    """Per-fold projector residuals sharing one set of inverses."""
    idx_list = _fold_indices(p, folds)
    Gi = linalg.inverse_or_pinv(assemble_G(p))
    Li = linalg.inverse_or_pinv(assemble_L(p))
    c = Gi @ p.g
    return np.array([_fold_residual(Gi, Li, c, ix) for ix in idx_list])


# --- exact engine -------------------------------------------------------------


def exact_cv(p: CollocationProblem, folds: FoldPartition) -> CVReport:
    """Exact k-fold CV by refitting the reduced system for every fold.

    Training rows are the complement of the fold; training columns are the
    same complement plus, when n > m, the trailing added centers, which are
    never validated and participate in every model.
    """
    if folds.k < 2:
        raise InvalidFoldCountError("exact CV needs at least two folds")
    G, L, t_asm = _assembled(p)
    idx_list = _fold_indices(p, folds)
    extra = np.arange(p.m, p.n)
    t0 = time.perf_counter()
    errors = np.empty(p.m)
    all_rows = np.arange(p.m)
    for ix in idx_list:
        train = np.setdiff1d(all_rows, ix, assume_unique=True)
        tau = np.concatenate([train, extra]) if extra.size else train
        c_fold = linalg.guarded_solve(G[np.ix_(train, tau)], p.g[train])
        errors[ix] = p.h[ix] - L[np.ix_(ix, tau)] @ c_fold
    wall = time.perf_counter() - t0
    return CVReport._build(errors, folds, "exact", wall, t_asm)


# --- empirical engine ---------------------------------------------------------


def empirical_loocv(p: CollocationProblem) -> CVReport:
    """Leave-one-out shortcut eta = c / diag(inv(G)) on the collocation matrix.

    Exact for pure interpolation; an inexpensive heuristic otherwise.
    """
    if p.m != p.n:
        raise ValueError("empirical LOOCV needs a square collocation matrix (m = n)")
    G, _, t_asm = _assembled(p)
    t0 = time.perf_counter()
    Gi = linalg.inverse_or_pinv(G)
    c = Gi @ p.g
    diag = np.diagonal(Gi).copy()
    if np.abs(diag).min() < DIAG_RTOL * np.abs(Gi).max():
        raise ZeroDiagonalError("a diagonal entry of inv(G) is numerically zero")
    errors = c / diag
    wall = time.perf_counter() - t0
    return CVReport._build(errors, loocv_partition(p.m), "empirical", wall, t_asm)


# --- brute-force oracle (testing only) ----------------------------------------


def naive_cv_oracle(p: CollocationProblem, folds: FoldPartition) -> CVReport:
    """Reference k-fold CV that rebuilds every reduced problem from scratch.

    Each fold gets fresh functional lists, entrywise matrix assembly through
    the scalar kernel dispatch, and an SVD least-squares solve, sharing no
    matrix restriction or factorization with :func:`exact_cv`.  Slow by
    design; intended for tests.
    """
    if folds.k < 2:
        raise InvalidFoldCountError("cross validation needs at least two folds")
    idx_list = _fold_indices(p, folds)
    errors = np.empty(p.m)
    kernel = p.kernel
    extras = list(range(p.m, p.n))
    t0 = time.perf_counter()
    for ix in idx_list:
        held = set(ix.tolist())
        train = [i for i in range(p.m) if i not in held]
        tau = train + extras
        rows = [p.gammas[i] for i in train]
        cols = [p.lambdas[j] for j in tau]
        A = np.array([[kernel_entry(kernel, rf.kind, cf.kind, rf.point, cf.point)
                       for cf in cols] for rf in rows])
        coef, *_ = np.linalg.lstsq(A, p.g[train], rcond=linalg.PINV_RTOL)
        for i in ix:
            x = p.gammas[i].point
            s = sum(coef[j] * kernel_entry(kernel, FunctionalKind.DELTA, cf.kind, x, cf.point)
                    for j, cf in enumerate(cols))
            errors[i] = p.h[i] - s
    wall = time.perf_counter() - t0
    return CVReport._build(errors, folds, "oracle", wall, 0.0)

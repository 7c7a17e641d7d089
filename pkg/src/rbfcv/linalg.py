"""Dense real linear algebra: guarded solves, SVD pseudoinverse, index restriction.

Matrices and vectors are plain ``numpy`` float arrays.  Index selectors at
this module's boundary are 1-based, mirroring the restriction notation used
by the cross-validation formulas; conversion to 0-based storage happens
internally.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lapack, lu_factor, lu_solve

from .errors import IndexOutOfRangeError, SingularMatrixError, SvdFailureError

# Pivot magnitudes below PIVOT_RTOL * max|A| are treated as a breakdown.
PIVOT_RTOL = 1e-14
# Singular values below PINV_RTOL * sigma_max are dropped by the pseudoinverse.
# The value is the LAPACK/Matlab-style default max(m,n)*eps for the matrix
# sizes this library targets (a few hundred), which is what the benchmark
# reference values correspond to.
PINV_RTOL = 6.5e-14
# Estimated reciprocal condition below this routes a square matrix to the
# pseudoinverse path instead of LU.
RCOND_LIMIT = 1e-12


class Complement:
    """Selector for every 1-based index NOT in ``indices``."""

    __slots__ = ("indices",)

    def __init__(self, indices):
        self.indices = tuple(int(i) for i in np.atleast_1d(indices))

    def __repr__(self):
        return f"Complement({self.indices})"


def _checked_indices(indices, dim: int) -> np.ndarray:
    """Convert a 1-based index selection to a 0-based integer array."""
    idx = np.atleast_1d(np.asarray(indices, dtype=int))
    if idx.size and (idx.min() < 1 or idx.max() > dim):
        raise IndexOutOfRangeError(
            f"indices must lie in [1, {dim}], got range [{idx.min()}, {idx.max()}]"
        )
    return idx - 1


def resolve_selector(selector, dim: int) -> np.ndarray:
    """Resolve ``None`` (all), a 1-based index sequence, or a Complement."""
    if selector is None:
        return np.arange(dim)
    if isinstance(selector, Complement):
        keep = np.ones(dim, dtype=bool)
        keep[_checked_indices(selector.indices, dim)] = False
        return np.flatnonzero(keep)
    return _checked_indices(selector, dim)


def restrict(a: np.ndarray, rows=None, cols=None) -> np.ndarray:
    """Submatrix of ``a`` keeping the selected rows and columns.

    Parameters
    ----------
    a : ndarray, shape (m, n)
    rows, cols : None | sequence of 1-based ints | Complement
        ``None`` keeps everything; a sequence keeps exactly those indices in
        the given order; ``Complement(p)`` keeps the ascending complement.

    Returns
    -------
    ndarray with the retained entries, preserving relative order.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("restrict expects a 2-D array")
    r = resolve_selector(rows, a.shape[0])
    c = resolve_selector(cols, a.shape[1])
    return a[np.ix_(r, c)]


def subvector(z: np.ndarray, selector) -> np.ndarray:
    """Entries of a vector selected by 1-based indices or a Complement."""
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise ValueError("subvector expects a 1-D array")
    return z[resolve_selector(selector, z.shape[0])]


def complement_indices(indices, dim: int) -> np.ndarray:
    """Ascending 1-based complement of ``indices`` within ``1..dim``."""
    keep = np.ones(dim, dtype=bool)
    keep[_checked_indices(indices, dim)] = False
    return np.flatnonzero(keep) + 1


def _lu_factor_quiet(a: np.ndarray):
    """LU factorization without scipy's singular-diagonal warning; callers
    detect breakdown through the pivot magnitudes instead."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        return lu_factor(a, check_finite=False)


def _lu_with_rcond(a: np.ndarray):
    """LU factors plus a 1-norm reciprocal-condition estimate."""
    lu, piv = _lu_factor_quiet(a)
    anorm = np.abs(a).sum(axis=0).max() if a.size else 0.0
    rcond, _ = lapack.dgecon(lu, anorm, norm="1")
    return lu, piv, rcond


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve the square system ``a @ x = b`` by partial-pivoted LU.

    Raises
    ------
    SingularMatrixError
        If any pivot magnitude falls below ``PIVOT_RTOL * max|a|``.
    """
    a = np.asarray_chkfinite(a, dtype=float)
    b = np.asarray_chkfinite(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError("right-hand side length does not match the matrix")
    lu, piv = _lu_factor_quiet(a)
    scale = np.abs(a).max()
    if scale == 0.0 or np.abs(np.diag(lu)).min() < PIVOT_RTOL * scale:
        raise SingularMatrixError(
            f"pivot below {PIVOT_RTOL:g} * max|A| during LU factorization"
        )
    return lu_solve((lu, piv), b, check_finite=False)


def pinv(a: np.ndarray, rtol: float = PINV_RTOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values below ``rtol * sigma_max`` are treated as zero, which
    keeps severely ill-conditioned kernel matrices usable while matching the
    stock double-precision cutoff the benchmark tables were produced with.

    Raises
    ------
    SvdFailureError
        If the underlying SVD iteration does not converge.
    """
    a = np.asarray_chkfinite(a, dtype=float)
    try:
        return np.linalg.pinv(a, rcond=rtol)
    except np.linalg.LinAlgError as exc:
        raise SvdFailureError(str(exc)) from exc


def inverse_or_pinv(a: np.ndarray, rtol: float = PINV_RTOL) -> np.ndarray:
    """Explicit (pseudo)inverse with a conditioning guard.

    Square matrices whose estimated reciprocal condition exceeds
    ``RCOND_LIMIT`` are inverted through their LU factors; everything else
    (rectangular or near-singular) goes through :func:`pinv`.  The result has
    shape ``(n, m)`` for an ``(m, n)`` input.
    """
    a = np.asarray_chkfinite(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    m, n = a.shape
    if m == n:
        lu, piv, rcond = _lu_with_rcond(a)
        if np.isfinite(rcond) and rcond > RCOND_LIMIT:
            return lu_solve((lu, piv), np.eye(m), check_finite=False)
    return pinv(a, rtol)


def guarded_solve(a: np.ndarray, b: np.ndarray, rtol: float = PINV_RTOL) -> np.ndarray:
    """Solve ``a @ x = b`` by LU when square and well conditioned, else via pinv.

    The fallback forms the truncated pseudoinverse explicitly and applies it,
    giving the minimum-norm least-squares solution for rectangular or
    near-singular systems.
    """
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    if m == n:
        lu, piv, rcond = _lu_with_rcond(a)
        if np.isfinite(rcond) and rcond > RCOND_LIMIT:
            return lu_solve((lu, piv), np.asarray(b, dtype=float), check_finite=False)
    return pinv(a, rtol) @ np.asarray(b, dtype=float)

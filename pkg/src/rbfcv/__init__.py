"""Surrogate k-fold cross validation for RBF collocation of elliptic PDEs.

The package pairs a small dense-linear-algebra core with radial kernels,
point-set generators, collocation assembly, three cross-validation engines
(exact, surrogate, empirical), a shape-parameter sweep, and a benchmark CLI.
"""

from .errors import (
    AllEpsilonFailedError,
    IndexOutOfRangeError,
    InvalidCountError,
    InvalidFoldCountError,
    RbfCvError,
    SingularMatrixError,
    SingularSubmatrixError,
    SvdFailureError,
    UnsupportedKernelError,
    ZeroDiagonalError,
)
from .geometry import PointRole, PointSet, boundary_equispaced, combine, exterior_centers, halton2d
from .kernels import IMQ, MATERN2, FunctionalKind, LaplacianMode, RbfKernel, kernel_entry
from .collocation import (
    CollocationProblem,
    Functional,
    assemble_G,
    assemble_L,
    build_hermite,
    build_interpolation,
    build_kansa,
    exact_u,
    rbf_ps_solve,
    rhs_value,
)
from .crossval import (
    CVReport,
    FoldPartition,
    empirical_loocv,
    exact_cv,
    loocv_partition,
    naive_cv_oracle,
    partition_folds,
    surrogate_cv,
    surrogate_loocv_closed_form,
    fold_exactness_residual,
    fold_exactness_residuals,
)
from .tuning import EpsilonGrid, SweepResult, select_best, sweep

__version__ = "0.1.0"

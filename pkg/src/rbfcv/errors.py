"""Exception types shared across the library."""


class RbfCvError(Exception):
    """Base class for all rbfcv errors."""


class SingularMatrixError(RbfCvError):
    """A pivot collapsed while factorizing a square system."""


class SvdFailureError(RbfCvError):
    """The SVD iteration behind a pseudoinverse did not converge."""


class IndexOutOfRangeError(RbfCvError):
    """A 1-based index fell outside the dimension it restricts."""


class UnsupportedKernelError(RbfCvError):
    """The requested operation is not defined for this kernel family."""


class InvalidCountError(RbfCvError):
    """A requested point count is not positive."""


class InvalidFoldCountError(RbfCvError):
    """The fold count is incompatible with the number of collocation points."""


class SingularSubmatrixError(RbfCvError):
    """A restricted per-fold block is numerically singular (degenerate fold)."""


class ZeroDiagonalError(RbfCvError):
    """A diagonal entry of the inverse collocation matrix is numerically zero."""


class AllEpsilonFailedError(RbfCvError):
    """Every shape-parameter grid point failed during a sweep."""

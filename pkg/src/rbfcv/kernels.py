"""Radial basis functions with shape parameter, Laplacians, and functional dispatch.

Two families are provided, both normalized so that ``phi(0) = 1``:

* ``matern2``  -- Matern of smoothness C^2:  phi(r) = exp(-e*r) * (1 + e*r)
* ``imq``      -- inverse multiquadric C^inf: phi(r) = 1 / sqrt(1 + (e*r)^2)

with ``e`` the positive shape parameter.  All profile functions accept
scalars or numpy arrays of nonnegative radii and never divide by ``r``, so
coincident points are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UnsupportedKernelError

MATERN2 = "matern2"
IMQ = "imq"
FAMILIES = (MATERN2, IMQ)


class FunctionalKind(Enum):
    """Kind of linear functional attached to a point."""

    DELTA = "delta"
    LAPLACIAN = "laplacian"


class LaplacianMode(Enum):
    """Which closed form ``lap_phi`` returns.

    CLASSIC uses the closed forms commonly tabulated for these kernels.  For
    the inverse multiquadric that form is the exact 2-D radial Laplacian, but
    the tabulated Matern form ``e^2*exp(-e*r)*(e*r - 1)`` equals d2phi/dr2
    and omits the ``phi'/r`` term of the 2-D operator.  ANALYTIC_2D always
    returns ``phi''(r) + phi'(r)/r`` (limit value at r = 0), which for the
    Matern kernel is ``e^2*exp(-e*r)*(e*r - 2)``.
    """

    CLASSIC = "classic"
    ANALYTIC_2D = "analytic2d"


@dataclass(frozen=True)
class RbfKernel:
    """A radial kernel family together with its shape parameter."""

    family: str
    epsilon: float
    laplacian_mode: LaplacianMode = LaplacianMode.CLASSIC

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedKernelError(f"unknown kernel family {self.family!r}")
        if not (self.epsilon > 0):
            raise ValueError("shape parameter epsilon must be positive")
        if not isinstance(self.laplacian_mode, LaplacianMode):
            object.__setattr__(self, "laplacian_mode", LaplacianMode(self.laplacian_mode))

    def phi(self, r):
        """Kernel profile phi(r); phi(0) = 1 for both families."""
        s = self.epsilon * np.asarray(r, dtype=float)
        if self.family == MATERN2:
            return np.exp(-s) * (1.0 + s)
        return 1.0 / np.sqrt(1.0 + s * s)

    def lap_phi(self, r):
        """Laplacian profile, per ``laplacian_mode`` (see LaplacianMode)."""
        e = self.epsilon
        s = e * np.asarray(r, dtype=float)
        if self.family == MATERN2:
            shift = 1.0 if self.laplacian_mode is LaplacianMode.CLASSIC else 2.0
            return e * e * np.exp(-s) * (s - shift)
        # For the IMQ both modes coincide with the exact 2-D Laplacian.
        s2 = s * s
        return e * e * (s2 - 2.0) / (1.0 + s2) ** 2.5

    def bilap_phi(self, r):
        """Iterated Laplacian profile; defined for the IMQ family only."""
        if self.family != IMQ:
            raise UnsupportedKernelError(
                f"bilaplacian is not available for family {self.family!r}"
            )
        e = self.epsilon
        s2 = (e * np.asarray(r, dtype=float)) ** 2
        return 3.0 * e**4 * (3.0 * s2 * s2 - 24.0 * s2 + 8.0) / (1.0 + s2) ** 4.5

    def pair_profile(self, left: FunctionalKind, right: FunctionalKind, r):
        """Value of (left o right) applied to the kernel at radius ``r``.

        For radial kernels the Laplacian acting on either argument produces
        the same radial profile, so only the number of Laplacians matters.
        """
        n_lap = (left is FunctionalKind.LAPLACIAN) + (right is FunctionalKind.LAPLACIAN)
        if n_lap == 0:
            return self.phi(r)
        if n_lap == 1:
            return self.lap_phi(r)
        return self.bilap_phi(r)


def kernel_entry(kernel: RbfKernel, left: FunctionalKind, right: FunctionalKind,
                 x, y) -> float:
    """Single matrix entry for the functional pair (left at x, right at y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = float(np.hypot(x[0] - y[0], x[1] - y[1]))
    return float(kernel.pair_profile(left, right, r))

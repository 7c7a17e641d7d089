import math

import numpy as np
import pytest

from rbfcv.errors import UnsupportedKernelError
from rbfcv.kernels import (
    IMQ,
    MATERN2,
    FunctionalKind,
    LaplacianMode,
    RbfKernel,
    kernel_entry,
)

D = FunctionalKind.DELTA
LAP = FunctionalKind.LAPLACIAN


def test_phi_at_zero_is_one():
    assert RbfKernel(MATERN2, 3.0).phi(0.0) == 1.0
    assert RbfKernel(IMQ, 3.0).phi(0.0) == 1.0


def test_phi_values():
    assert RbfKernel(IMQ, 1.0).phi(1.0) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
    assert RbfKernel(MATERN2, 1.0).phi(1.0) == pytest.approx(2.0 * math.exp(-1.0), rel=1e-12)


def test_lap_phi_imq_at_zero():
    assert RbfKernel(IMQ, 1.0).lap_phi(0.0) == pytest.approx(-2.0, rel=1e-14)


def test_lap_phi_matern_modes():
    classic = RbfKernel(MATERN2, 1.0, LaplacianMode.CLASSIC)
    analytic = RbfKernel(MATERN2, 1.0, LaplacianMode.ANALYTIC_2D)
    assert classic.lap_phi(1.0) == pytest.approx(0.0, abs=1e-15)
    assert analytic.lap_phi(1.0) == pytest.approx(-math.exp(-1.0), rel=1e-14)
    # at the origin: classic = -eps^2, true 2-D operator = -2 eps^2
    eps = 1.7
    assert RbfKernel(MATERN2, eps).lap_phi(0.0) == pytest.approx(-eps**2, rel=1e-14)
    assert RbfKernel(MATERN2, eps, LaplacianMode.ANALYTIC_2D).lap_phi(0.0) == pytest.approx(
        -2 * eps**2, rel=1e-14)


def test_lap_phi_imq_mode_independent():
    r = np.linspace(0.0, 3.0, 17)
    a = RbfKernel(IMQ, 1.3).lap_phi(r)
    b = RbfKernel(IMQ, 1.3, LaplacianMode.ANALYTIC_2D).lap_phi(r)
    np.testing.assert_array_equal(a, b)


def test_bilap_phi_values():
    k = RbfKernel(IMQ, 1.0)
    assert k.bilap_phi(0.0) == pytest.approx(24.0, rel=1e-14)
    assert k.bilap_phi(1.0) == pytest.approx(-39.0 / 2.0**4.5, rel=1e-12)
    assert RbfKernel(IMQ, 2.0).bilap_phi(0.0) == pytest.approx(384.0, rel=1e-14)


def test_bilap_matern_unsupported():
    with pytest.raises(UnsupportedKernelError):
        RbfKernel(MATERN2, 1.0).bilap_phi(1.0)


def test_kernel_entry_dispatch():
    k = RbfKernel(IMQ, 1.0)
    x = (0.3, 0.4)
    assert kernel_entry(k, D, D, x, x) == pytest.approx(1.0)
    assert kernel_entry(k, LAP, D, x, x) == pytest.approx(-2.0)
    assert kernel_entry(k, D, LAP, x, x) == pytest.approx(-2.0)
    assert kernel_entry(k, LAP, LAP, x, x) == pytest.approx(24.0)


def test_kernel_entry_symmetry():
    k = RbfKernel(IMQ, 1.7)
    rng = np.random.default_rng(2)
    for _ in range(20):
        x, y = rng.random(2), rng.random(2)
        for a in (D, LAP):
            for b in (D, LAP):
                assert kernel_entry(k, a, b, x, y) == pytest.approx(
                    kernel_entry(k, b, a, y, x), rel=1e-13)


def test_invalid_construction():
    with pytest.raises(UnsupportedKernelError):
        RbfKernel("gaussian", 1.0)
    with pytest.raises(ValueError):
        RbfKernel(IMQ, 0.0)


def _fd_lap2d(func, x, y, h=1e-4):
    """Five-point finite-difference Laplacian of func(||x - y||) in x."""
    def f(p):
        return func(np.hypot(p[0] - y[0], p[1] - y[1]))
    return (f((x[0] + h, x[1])) + f((x[0] - h, x[1]))
            + f((x[0], x[1] + h)) + f((x[0], x[1] - h)) - 4.0 * f(x)) / h**2


def test_imq_lap_matches_finite_differences():
    # seed chosen so no sample lands near the zero of the profile, where
    # relative error is ill-posed
    rng = np.random.default_rng(24)
    for _ in range(100):
        eps = float(rng.uniform(0.5, 2.0))
        r = float(rng.uniform(0.05, 3.0))
        theta = float(rng.uniform(0, 2 * np.pi))
        y = rng.uniform(-1, 1, size=2)
        x = y + r * np.array([np.cos(theta), np.sin(theta)])
        k = RbfKernel(IMQ, eps)
        fd = _fd_lap2d(k.phi, x, y)
        exact = float(k.lap_phi(r))
        assert abs(fd - exact) < 1e-5 * abs(exact)


def test_imq_bilap_matches_fd_of_lap():
    rng = np.random.default_rng(0)
    k = RbfKernel(IMQ, 1.0, LaplacianMode.ANALYTIC_2D)
    for _ in range(100):
        r = float(rng.uniform(0.1, 3.0))
        theta = float(rng.uniform(0, 2 * np.pi))
        y = rng.uniform(-1, 1, size=2)
        x = y + r * np.array([np.cos(theta), np.sin(theta)])
        fd = _fd_lap2d(k.lap_phi, x, y)
        exact = float(k.bilap_phi(r))
        assert abs(fd - exact) < 1e-4 * abs(exact)


def test_matern_analytic_mode_matches_fd():
    rng = np.random.default_rng(44)
    k = RbfKernel(MATERN2, 1.2, LaplacianMode.ANALYTIC_2D)
    for _ in range(50):
        r = float(rng.uniform(0.1, 3.0))
        y = rng.uniform(-1, 1, size=2)
        x = y + np.array([r, 0.0])
        fd = _fd_lap2d(k.phi, x, y)
        assert abs(fd - float(k.lap_phi(r))) < 1e-4 * max(abs(float(k.lap_phi(r))), 1e-3)


def test_profiles_finite_for_coincident_points():
    for fam in (MATERN2, IMQ):
        k = RbfKernel(fam, 2.5)
        assert np.isfinite(k.phi(0.0))
        assert np.isfinite(k.lap_phi(0.0))
    assert np.isfinite(RbfKernel(IMQ, 2.5).bilap_phi(0.0))

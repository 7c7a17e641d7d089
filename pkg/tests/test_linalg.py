import numpy as np
import pytest

from rbfcv import linalg
from rbfcv.errors import IndexOutOfRangeError, SingularMatrixError


def test_solve_diagonal():
    x = linalg.solve(np.diag([2.0, 4.0]), np.array([2.0, 8.0]))
    np.testing.assert_allclose(x, [1.0, 2.0], rtol=1e-14)


def test_solve_identity():
    x = linalg.solve(np.eye(3), np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(x, [1.0, 2.0, 3.0], rtol=1e-14)


def test_solve_2x2_hand_inverse():
    # inverse of [[1,1],[1,2]] is [[2,-1],[-1,1]], so x = (2*3-5, -3+5) = (1, 2)
    A = np.array([[1.0, 1.0], [1.0, 2.0]])
    x = linalg.solve(A, np.array([3.0, 5.0]))
    np.testing.assert_allclose(x, [1.0, 2.0], rtol=1e-12)


def test_solve_singular_raises():
    A = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError):
        linalg.solve(A, np.array([1.0, 1.0]))


def test_solve_rejects_nonsquare_and_nan():
    with pytest.raises(ValueError):
        linalg.solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(ValueError):
        linalg.solve(np.array([[np.nan, 0.0], [0.0, 1.0]]), np.ones(2))


def test_solve_residual_small():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((40, 40)) + 40 * np.eye(40)
    b = rng.standard_normal(40)
    x = linalg.solve(A, b)
    assert np.linalg.norm(A @ x - b) / np.linalg.norm(b) < 1e-12


def test_pinv_identity():
    np.testing.assert_allclose(linalg.pinv(np.eye(3)), np.eye(3), atol=1e-14)


def test_pinv_rank_deficient_diagonal():
    np.testing.assert_allclose(linalg.pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]), atol=1e-14)


def test_pinv_left_inverse_tall():
    rng = np.random.default_rng(7)
    A = rng.standard_normal((5, 3))
    np.testing.assert_allclose(linalg.pinv(A) @ A, np.eye(3), atol=1e-10)


def _random_matrices(rng, count):
    mats = []
    for i in range(count):
        m = int(rng.integers(2, 51))
        n = int(rng.integers(2, 51))
        A = rng.standard_normal((m, n))
        if i % 4 == 3:  # force rank deficiency
            r = max(1, min(m, n) // 2)
            A = rng.standard_normal((m, r)) @ rng.standard_normal((r, n))
        mats.append(A)
    return mats


@pytest.mark.parametrize("seed", [0, 1])
def test_penrose_conditions(seed):
    rng = np.random.default_rng(seed)
    for A in _random_matrices(rng, 25):
        X = linalg.pinv(A)
        anorm = max(np.linalg.norm(A, 2), 1.0)
        xnorm = max(np.linalg.norm(X, 2), 1.0)
        assert np.abs(A @ X @ A - A).max() < 1e-10 * anorm
        assert np.abs(X @ A @ X - X).max() < 1e-10 * xnorm
        assert np.abs((A @ X).T - A @ X).max() < 1e-10 * anorm
        assert np.abs((X @ A).T - X @ A).max() < 1e-10 * anorm


def test_pinv_inverts_well_conditioned_square():
    rng = np.random.default_rng(11)
    A = rng.standard_normal((30, 30)) + 30 * np.eye(30)
    np.testing.assert_allclose(linalg.pinv(A) @ A, np.eye(30), atol=1e-12 * np.linalg.cond(A))


def test_restrict_rows_cols():
    A = np.arange(1.0, 10.0).reshape(3, 3)
    np.testing.assert_array_equal(linalg.restrict(A, rows=[2], cols=[1, 3]), [[4.0, 6.0]])


def test_restrict_complement_empty():
    A = np.arange(1.0, 10.0).reshape(3, 3)
    out = linalg.restrict(A, rows=None, cols=linalg.Complement([1, 2, 3]))
    assert out.shape == (3, 0)


def test_restrict_single_entry():
    A = np.arange(1.0, 10.0).reshape(3, 3)
    np.testing.assert_array_equal(linalg.restrict(A, rows=[1], cols=[1]), [[1.0]])


def test_restrict_out_of_range():
    A = np.eye(3)
    with pytest.raises(IndexOutOfRangeError):
        linalg.restrict(A, rows=[4])
    with pytest.raises(IndexOutOfRangeError):
        linalg.restrict(A, cols=[0])


def test_restrict_composition_matches_combined():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((8, 8))
    step1 = linalg.restrict(A, rows=[1, 3, 5, 7], cols=None)
    step2 = linalg.restrict(step1, rows=[2, 4], cols=[1, 2])
    combined = linalg.restrict(A, rows=[3, 7], cols=[1, 2])
    np.testing.assert_array_equal(step2, combined)


def test_subvector_and_complement_indices():
    z = np.array([10.0, 20.0, 30.0, 40.0])
    np.testing.assert_array_equal(linalg.subvector(z, [2, 4]), [20.0, 40.0])
    np.testing.assert_array_equal(linalg.subvector(z, linalg.Complement([2, 4])), [10.0, 30.0])
    np.testing.assert_array_equal(linalg.complement_indices([2, 4], 4), [1, 3])


def test_inverse_or_pinv_square_vs_rectangular():
    rng = np.random.default_rng(13)
    A = rng.standard_normal((10, 10)) + 10 * np.eye(10)
    np.testing.assert_allclose(linalg.inverse_or_pinv(A), np.linalg.inv(A), rtol=1e-10, atol=1e-12)
    B = rng.standard_normal((6, 9))
    assert linalg.inverse_or_pinv(B).shape == (9, 6)


def test_guarded_solve_falls_back_for_singular():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    x = linalg.guarded_solve(A, np.array([2.0, 2.0]))
    # minimum-norm least-squares solution of the rank-1 system
    np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-12)

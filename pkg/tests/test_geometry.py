import numpy as np
import pytest

from rbfcv.errors import InvalidCountError
from rbfcv.geometry import (
    PointRole,
    boundary_equispaced,
    combine,
    exterior_centers,
    halton2d,
    read_points_csv,
    write_points_csv,
)


def test_halton_first_points():
    ps = halton2d(3)
    np.testing.assert_allclose(ps.points[0], [0.5, 1.0 / 3.0], rtol=1e-15)
    np.testing.assert_allclose(ps.points[1], [0.25, 2.0 / 3.0], rtol=1e-15)
    np.testing.assert_allclose(ps.points[2], [0.75, 1.0 / 9.0], rtol=1e-15)
    assert all(r is PointRole.INTERIOR for r in ps.roles)


def test_halton_strictly_interior_and_distinct():
    ps = halton2d(1000)
    assert np.all(ps.points > 0.0) and np.all(ps.points < 1.0)
    assert len(np.unique(ps.points, axis=0)) == 1000


def test_halton_deterministic():
    np.testing.assert_array_equal(halton2d(50).points, halton2d(50).points)


def test_halton_rejects_zero():
    with pytest.raises(InvalidCountError):
        halton2d(0)


def test_boundary_four_corners():
    ps = boundary_equispaced(4)
    np.testing.assert_array_equal(ps.points, [[0, 0], [1, 0], [1, 1], [0, 1]])
    assert all(r is PointRole.BOUNDARY for r in ps.roles)


def test_boundary_eight_adds_midpoints():
    ps = boundary_equispaced(8)
    expected = [[0, 0], [0.5, 0], [1, 0], [1, 0.5], [1, 1], [0.5, 1], [0, 1], [0, 0.5]]
    np.testing.assert_allclose(ps.points, expected, atol=1e-15)


def test_boundary_sixteen_bottom_edge():
    pts = boundary_equispaced(16).points
    for p in ([0.25, 0.0], [0.5, 0.0], [0.75, 0.0]):
        assert any(np.allclose(q, p, atol=1e-15) for q in pts)


def test_boundary_constant_arclength_gaps():
    pts = boundary_equispaced(20).points
    gaps = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
    assert np.ptp(gaps) < 1e-12
    assert len(np.unique(pts, axis=0)) == 20


def test_boundary_rejects_zero():
    with pytest.raises(InvalidCountError):
        boundary_equispaced(0)


def test_exterior_edge_normals():
    b = boundary_equispaced(8)
    ext = exterior_centers(b, 0.25)
    lookup = {tuple(p): q for p, q in zip(b.points, ext.points)}
    np.testing.assert_allclose(lookup[(0.5, 0.0)], [0.5, -0.25], atol=1e-15)
    np.testing.assert_allclose(lookup[(1.0, 0.5)], [1.25, 0.5], atol=1e-15)
    s = 0.25 / np.sqrt(2.0)
    np.testing.assert_allclose(lookup[(0.0, 0.0)], [-s, -s], atol=1e-15)
    assert all(r is PointRole.EXTERIOR_CENTER for r in ext.roles)


def test_exterior_distance_and_count():
    b = boundary_equispaced(16)
    offset = 0.25
    ext = exterior_centers(b, offset)
    assert len(ext) == len(b)
    clipped = np.clip(ext.points, 0.0, 1.0)
    dist = np.linalg.norm(ext.points - clipped, axis=1)
    assert np.all(dist >= offset / np.sqrt(2.0) - 1e-15)


def test_exterior_rejects_interior_point():
    from rbfcv.geometry import PointSet

    with pytest.raises(ValueError):
        exterior_centers(PointSet(np.array([[0.5, 0.5]]), [PointRole.BOUNDARY]), 0.1)


def test_combine_preserves_order():
    a = halton2d(3)
    b = boundary_equispaced(4)
    c = combine(a, b)
    assert len(c) == 7
    np.testing.assert_array_equal(c.points[:3], a.points)
    assert c.roles[3:] == b.roles


def test_csv_round_trip(tmp_path):
    ps = combine(halton2d(5), boundary_equispaced(4))
    path = tmp_path / "points.csv"
    write_points_csv(ps, path)
    back = read_points_csv(path)
    np.testing.assert_array_equal(back.points, ps.points)
    assert back.roles == ps.roles

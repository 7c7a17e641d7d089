"""Point configurations on the unit square: Halton interiors, equispaced
boundary rings, and exterior center rings."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidCountError


class PointRole(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR_CENTER = "exterior"


@dataclass
class PointSet:
    """Ordered 2-D points with a parallel list of roles."""

    points: np.ndarray          # shape (n, 2)
    roles: list[PointRole]

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if self.points.shape[0] != len(self.roles):
            raise ValueError("points and roles must have the same length")

    def __len__(self) -> int:
        return self.points.shape[0]


def combine(*sets: PointSet) -> PointSet:
    """Concatenate point sets, preserving order."""
    points = np.vstack([s.points for s in sets])
    roles = [r for s in sets for r in s.roles]
    return PointSet(points, roles)


def _radical_inverse(i: int, base: int) -> float:
    inv, f = 0.0, 1.0 / base
    while i > 0:
        i, digit = divmod(i, base)
        inv += digit * f
        f /= base
    return inv


def halton2d(count: int) -> PointSet:
    """First ``count`` Halton points in bases (2, 3), starting at index 1.

    Index 0 would yield the corner (0, 0); starting at 1 keeps every point
    strictly inside the open unit square.
    """
    if count < 1:
        raise InvalidCountError("count must be >= 1")
    pts = np.array(
        [(_radical_inverse(i, 2), _radical_inverse(i, 3)) for i in range(1, count + 1)]
    )
    return PointSet(pts, [PointRole.INTERIOR] * count)


def _perimeter_point(t: float) -> tuple[float, float]:
    """Map arclength t in [0, 4) to the unit-square boundary, ccw from (0,0)."""
    if t < 1.0:
        return (t, 0.0)
    if t < 2.0:
        return (1.0, t - 1.0)
    if t < 3.0:
        return (3.0 - t, 1.0)
    return (0.0, 4.0 - t)


def boundary_equispaced(count: int) -> PointSet:
    """``count`` points equispaced along the boundary of [0,1]^2.

    The traversal starts at the origin and runs counterclockwise with
    constant arclength spacing 4/count; corners are hit whenever the spacing
    lands on them (always, for counts divisible by 4).
    """
    if count < 1:
        raise InvalidCountError("count must be >= 1")
    spacing = 4.0 / count
    pts = np.array([_perimeter_point(i * spacing) for i in range(count)])
    return PointSet(pts, [PointRole.BOUNDARY] * count)


def exterior_centers(boundary: PointSet, offset: float) -> PointSet:
    """One center per boundary point, pushed outward by ``offset``.

    Edge points move along the outward unit normal of their edge; corner
    points move along the outward diagonal (+-1, +-1)/sqrt(2).
    """
    if not (offset > 0):
        raise ValueError("offset must be positive")
    tol = 1e-12
    out = np.empty_like(boundary.points)
    for i, (x1, x2) in enumerate(boundary.points):
        n = np.zeros(2)
        if abs(x2) <= tol:
            n += (0.0, -1.0)
        if abs(x1 - 1.0) <= tol:
            n += (1.0, 0.0)
        if abs(x2 - 1.0) <= tol:
            n += (0.0, 1.0)
        if abs(x1) <= tol:
            n += (-1.0, 0.0)
        norm = np.hypot(*n)
        if norm == 0.0:
            raise ValueError(f"point ({x1}, {x2}) does not lie on the boundary")
        out[i] = (x1, x2) + offset * n / norm
    return PointSet(out, [PointRole.EXTERIOR_CENTER] * len(boundary))


def write_points_csv(ps: PointSet, path) -> None:
    """Write a point set as CSV with columns x1, x2, role."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "role"])
        for (x1, x2), role in zip(ps.points, ps.roles):
            writer.writerow([repr(float(x1)), repr(float(x2)), role.value])


def read_points_csv(path) -> PointSet:
    """Read a point set written by :func:`write_points_csv`."""
    pts, roles = [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            pts.append((float(row["x1"]), float(row["x2"])))
            roles.append(PointRole(row["role"]))
    return PointSet(np.array(pts), roles)


__all__ = [
    "PointRole", "PointSet", "combine", "halton2d", "boundary_equispaced",
    "exterior_centers", "write_points_csv", "read_points_csv",
]

"""Chebyshev-metric neighbor primitives.

Everything here is an exact brute-force scan. The joint spaces are high
dimensional and the point sets are small (subsampled to ~100 points per
estimate), so a spatial index buys nothing; the scan is chunked to keep
the working set cache friendly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_CHUNK_ROWS = 256


@dataclass(frozen=True)
class PointSet:
    """Immutable set of equal-dimension points, stored as an (n, dim) array."""

    points: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-d array of shape (n, dim)")
        if pts.shape[1] < 1:
            raise ValueError("points must have at least one coordinate")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", pts.shape[1])

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class SubspaceMask:
    """Ordered coordinate positions selecting a projection of a PointSet."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) == 0:
            raise ValueError("mask must select at least one coordinate")
        if len(set(idx)) != len(idx):
            raise ValueError("mask indices must be distinct")
        if min(idx) < 0:
            raise ValueError("mask indices must be nonnegative")
        object.__setattr__(self, "indices", idx)

    def validate_for(self, dim: int) -> None:
        if max(self.indices) >= dim:
            raise ValueError(f"mask index {max(self.indices)} out of range for dim {dim}")


def chebyshev_distance(a, b) -> float:
    """Max-norm distance between two vectors of equal dimension."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def pairwise_chebyshev(points: np.ndarray, chunk: int = _CHUNK_ROWS) -> np.ndarray:
    """Full (n, n) max-norm distance matrix, computed in row chunks."""
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        diff = np.abs(pts[lo:hi, None, :] - pts[None, :, :])
        out[lo:hi] = diff.max(axis=2)
    return out


def kth_radius_from_matrix(dist: np.ndarray, k: int) -> np.ndarray:
    """Per-row distance to the k-th nearest other point (self excluded)."""
    n = dist.shape[0]
    if k < 1:
        raise ValueError("k must be >= 1")
    if k >= n:
        raise ValueError(f"k={k} requires more than {n} points")
    d = dist.copy()
    np.fill_diagonal(d, np.inf)
    return np.partition(d, k - 1, axis=1)[:, k - 1]


def strict_counts_from_matrix(dist: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Per-row count of other points strictly within the given radius."""
    d = dist.copy()
    np.fill_diagonal(d, np.inf)
    return (d < np.asarray(radii)[:, None]).sum(axis=1)


def _masked(ps: PointSet, mask: SubspaceMask | None) -> np.ndarray:
    if mask is None:
        return ps.points
    mask.validate_for(ps.dim)
    return ps.points[:, list(mask.indices)]


def kth_neighbor_radius(ps: PointSet, i: int, k: int) -> float:
    """Chebyshev distance from point i to its k-th nearest other point.

    Residual exact-distance ties (the upstream jitter makes these rare)
    resolve in favor of the lower point index, which cannot change the
    returned radius value.
    """
    n = len(ps)
    if not 0 <= i < n:
        raise ValueError(f"index {i} out of range for {n} points")
    if k < 1 or k >= n:
        raise ValueError(f"k={k} requires at least k+1={k + 1} points, have {n}")
    d = np.max(np.abs(ps.points - ps.points[i]), axis=1)
    d[i] = np.inf
    return float(np.partition(d, k - 1)[k - 1])


def count_within(ps: PointSet, mask: SubspaceMask | None, i: int, radius: float) -> int:
    """Number of points j != i with masked-projection distance strictly < radius."""
    n = len(ps)
    if not 0 <= i < n:
        raise ValueError(f"index {i} out of range for {n} points")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    pts = _masked(ps, mask)
    d = np.max(np.abs(pts - pts[i]), axis=1)
    d[i] = np.inf
    return int((d < radius).sum())

"""Shared data model and robust geometry primitives.

All reductions go through numpy's fixed pairwise summation so repeated runs
on identical inputs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ANOMALY_LABEL = -1


def as_points(points) -> np.ndarray:
    """Coerce a point collection to a finite float64 matrix of shape (n, d)."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"points must be 1-D or 2-D, got ndim={arr.ndim}")
    if arr.size and not np.isfinite(arr).all():
        raise ValueError("points contain NaN or infinite values")
    return arr


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with dense integer ids 0..n-1 and optional truth labels."""

    features: np.ndarray
    truth_labels: np.ndarray | None = None
    column_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        feats = as_points(self.features)
        if feats.shape[0] == 0:
            raise ValueError("empty dataset")
        object.__setattr__(self, "features", feats)
        if self.truth_labels is not None:
            truth = np.asarray(self.truth_labels, dtype=np.int64)
            if truth.shape != (feats.shape[0],):
                raise ValueError("truth_labels length must match number of points")
            if (truth < ANOMALY_LABEL).any():
                raise ValueError("labels must be >= -1")
            object.__setattr__(self, "truth_labels", truth)
        if not self.column_names:
            object.__setattr__(self, "column_names", default_column_names(feats.shape[1]))
        elif len(self.column_names) != feats.shape[1]:
            raise ValueError("column_names length must match dimension")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    @property
    def ids(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int64)


def default_column_names(dim: int) -> tuple[str, ...]:
    if dim == 1:
        return ("x",)
    if dim == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(dim))


def coordinate_median(points) -> np.ndarray:
    """Component-wise median; even counts average the two middle order statistics."""
    pts = as_points(points)
    if pts.shape[0] == 0:
        raise ValueError("empty cluster")
    return np.median(pts, axis=0)


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def deviations(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    """Euclidean distance of each row to ``center``."""
    pts = as_points(points)
    center = np.asarray(center, dtype=np.float64).reshape(-1)
    if center.shape[0] != pts.shape[1]:
        raise ValueError(f"dimension mismatch: {center.shape[0]} vs {pts.shape[1]}")
    return np.sqrt(np.sum((pts - center) ** 2, axis=1))


def mean_squared_deviation(points) -> float:
    """Mean squared Euclidean distance to the coordinate-wise median."""
    pts = as_points(points)
    if pts.shape[0] == 0:
        raise ValueError("empty cluster")
    med = np.median(pts, axis=0)
    return float(np.mean(np.sum((pts - med) ** 2, axis=1)))

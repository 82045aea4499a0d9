"""Parameter-free anomaly model over Euclidean deviations from a cluster median.

The model treats deviations as n draws of uniform noise on [0, support] with
support estimated as twice the mean deviation (a uniform variable on [0, b]
has mean b/2). A spacing g between sorted deviations is unexpected when its
expected number of occurrences among n uniform points,

    E(g) = n * (1 - g / support) ** (n - 1),

drops below 1, i.e. when g exceeds

    gap_star = support * (1 - n ** (-1 / (n - 1))).

Fitting sorts the deviations and separates an anomalous tail with two kinds
of unexpected spacing, scanned from the largest deviation downward:

* a spacing of zero expectation (g >= support): no uniform configuration
  produces it, so everything above it is tail regardless of how that far
  group is arranged internally (this is what ejects co-located mislabelled
  points);
* a chain of spacings each exceeding gap_star peels sparse fringe points one
  by one until a spacing at most gap_star reconnects the remainder.

``edge`` is the largest retained deviation and ``cutoff = edge + gap_star``
is the membership boundary: E(cutoff) = 1 exactly, and a query is anomalous
iff its expectation is below 1, equivalently iff its deviation exceeds the
cutoff. The smallest deviation is never part of the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import as_points, deviations, euclidean_distance

# largest double below 1.0, used to keep score/verdict agreement exact
_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class AnomalyModel:
    """Immutable fitted state; safe to share across threads."""

    median: np.ndarray
    n: int
    mu: float
    support: float
    gap_star: float
    edge: float
    cutoff: float

    @property
    def dim(self) -> int:
        return self.median.shape[0]


def _gap_star(n: int, support: float) -> float:
    if n <= 1 or support == 0.0:
        return 0.0
    return support * (1.0 - n ** (-1.0 / (n - 1)))


def fit(points) -> AnomalyModel:
    """Fit the uniform-noise deviation model on a non-empty set of points."""
    pts = as_points(points)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("empty cluster")
    median = np.median(pts, axis=0)
    dev = deviations(pts, median)
    mu = float(np.mean(dev))
    support = 2.0 * mu
    gap_star = _gap_star(n, support)

    dev_sorted = np.sort(dev)
    top = n - 1  # index of the largest retained deviation
    if n > 1:
        gaps = np.diff(dev_sorted)
        zero_expectation = np.flatnonzero((gaps > 0.0) & (gaps >= support))
        if zero_expectation.size:
            top = int(zero_expectation[0])
        while top > 0 and gaps[top - 1] > gap_star:
            top -= 1
    edge = float(dev_sorted[top])
    return AnomalyModel(
        median=median,
        n=n,
        mu=mu,
        support=support,
        gap_star=gap_star,
        edge=edge,
        cutoff=edge + gap_star,
    )


def expectation(model: AnomalyModel, d: float) -> float:
    """Expected occurrences, among n uniform points on [0, support], of a
    spacing of at least (d - edge) beyond the retained mass.

    Clamped to the correct side of 1.0 within the rounding sliver around the
    cutoff so that (expectation < 1) and (d > cutoff) agree exactly.
    """
    return float(expectation_many(model, np.array([float(d)]))[0])


def expectation_many(model: AnomalyModel, d) -> np.ndarray:
    """Vectorized ``expectation``; the scalar form delegates here so both
    produce bit-identical values. Always returns a 1-D array."""
    d = np.atleast_1d(np.asarray(d, dtype=np.float64))
    if (d < 0.0).any():
        raise ValueError("deviation must be non-negative")
    out = np.full(d.shape, float(model.n))
    if model.support == 0.0:
        out[d > model.edge] = 0.0
        return out
    g = d - model.edge
    beyond = g >= model.support
    mid = (d > model.edge) & ~beyond
    e = model.n * (1.0 - g[mid] / model.support) ** (model.n - 1)
    low = d[mid] <= model.cutoff
    e[low & (e < 1.0)] = 1.0
    e[~low & (e >= 1.0)] = _BELOW_ONE
    out[mid] = e
    out[beyond] = 0.0
    return out


MEMBER = "member"
ANOMALY = "anomaly"


def classify(model: AnomalyModel, x) -> tuple[str, float]:
    """Return (verdict, score) for a query point.

    verdict is "anomaly" iff score < 1, equivalently iff the deviation
    exceeds the cutoff; the two criteria agree exactly.
    """
    d = euclidean_distance(x, model.median)
    score = expectation(model, d)
    return (ANOMALY if d > model.cutoff else MEMBER), score

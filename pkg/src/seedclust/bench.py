"""Deterministic synthetic benchmarks: Gaussian clusters, isolated anomalies,
a small anomalous cluster, and the seed-sampling procedure.

Randomness comes from numpy's PCG64 stream; normals are produced by a
Box-Muller transform of that stream's uniforms so regeneration is
bit-identical for a fixed rng seed, independent of numpy's own normal
sampler. Every frozen constant is recorded in the sidecar spec file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Dataset

SPEC_VERSION = "seedclust-benchspec/1"

# 1-D layout: three clusters plus extras, all >= 6 std from every center.
CENTERS_1D = (0.0, 50.0, 100.0)
STDS_1D = (1.0, 3.0, 6.0)
SIZE_1D = 10000
ISOLATED_1D_REGIONS = ((-30.0, -10.0), (10.0, 30.0), (140.0, 170.0))
ISOLATED_1D_PER_REGION = 5
ANOM_CLUSTER_1D = ((150.0,), 0.5, 30)
MISLABELLED_1D = 5

# 2-D layout: one deliberately close pair (clusters 1 and 2); every other
# pair of centers is at least 6*(sum of stds) apart.
CENTERS_2D = (
    (20.0, 0.0),
    (0.0, 0.0),
    (5.0, 5.0),
    (0.0, 20.0),
    (40.0, 40.0),
    (20.0, 20.0),
    (40.0, 0.0),
    (0.0, 40.0),
)
STDS_2D = (0.6, 2.0, 0.2, 0.7, 3.0, 0.4, 0.6, 0.6)
SIZE_2D = 1250
N_ISOLATED_2D = 250
BOX_2D = (-20.0, 60.0)
ANOM_CLUSTER_2D = ((11.0, 20.0), 0.3, 50)
MISLABELLED_2D = 0


@dataclass(frozen=True)
class BenchmarkSpec:
    cluster_centers: tuple[tuple[float, ...], ...]
    cluster_stds: tuple[float, ...]
    cluster_sizes: tuple[int, ...]
    n_isolated_anomalies: int
    anomalous_cluster: tuple[tuple[float, ...], float, int]  # center, std, size
    n_mislabelled_seeds: int
    rng_seed: int
    extras: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.cluster_centers)
        if not (len(self.cluster_stds) == len(self.cluster_sizes) == k):
            raise ValueError("centers/stds/sizes must have equal length")
        if any(s <= 0 for s in self.cluster_stds):
            raise ValueError("stds must be positive")
        if any(n < 1 for n in self.cluster_sizes):
            raise ValueError("sizes must be >= 1")


def _normals(rng: np.random.Generator, n: int) -> np.ndarray:
    """Standard normals via Box-Muller on the uniform stream; fixed draw count."""
    m = (n + 1) // 2
    u1 = rng.random(m)
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log1p(-u1))  # log1p(-u) keeps u=0 finite
    theta = 2.0 * np.pi * u2
    z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
    return z[:n]


def gen_1d(rng_seed: int) -> tuple[Dataset, BenchmarkSpec]:
    """Three 10000-point Gaussian clusters (centers 0/50/100, stds 1/3/6) plus
    15 isolated anomalies and a 30-point anomalous cluster at 150."""
    rng = np.random.default_rng(rng_seed)
    parts: list[np.ndarray] = []
    labels: list[np.ndarray] = []
    for i, (c, s) in enumerate(zip(CENTERS_1D, STDS_1D)):
        pts = c + s * _normals(rng, SIZE_1D)
        _check_sample_mean(pts, c, s, SIZE_1D)
        parts.append(pts)
        labels.append(np.full(SIZE_1D, i, dtype=np.int64))
    for lo, hi in ISOLATED_1D_REGIONS:
        parts.append(rng.uniform(lo, hi, ISOLATED_1D_PER_REGION))
        labels.append(np.full(ISOLATED_1D_PER_REGION, -1, dtype=np.int64))
    (ac,), astd, asize = ANOM_CLUSTER_1D
    parts.append(ac + astd * _normals(rng, asize))
    labels.append(np.full(asize, -1, dtype=np.int64))

    features = np.concatenate(parts).reshape(-1, 1)
    truth = np.concatenate(labels)
    spec = BenchmarkSpec(
        cluster_centers=tuple((c,) for c in CENTERS_1D),
        cluster_stds=STDS_1D,
        cluster_sizes=(SIZE_1D,) * 3,
        n_isolated_anomalies=ISOLATED_1D_PER_REGION * len(ISOLATED_1D_REGIONS),
        anomalous_cluster=ANOM_CLUSTER_1D,
        n_mislabelled_seeds=MISLABELLED_1D,
        rng_seed=rng_seed,
        extras={
            "bench": "1d",
            "isolated_regions": ";".join(f"{lo},{hi}" for lo, hi in ISOLATED_1D_REGIONS),
        },
    )
    return Dataset(features, truth), spec


def gen_2d(rng_seed: int) -> tuple[Dataset, BenchmarkSpec]:
    """Eight Gaussian clusters (1250 points each), 250 isolated anomalies
    uniform over the bounding box, and a 50-point anomalous cluster at (11,20);
    10300 points in total."""
    rng = np.random.default_rng(rng_seed)
    parts: list[np.ndarray] = []
    labels: list[np.ndarray] = []
    for i, ((cx, cy), s) in enumerate(zip(CENTERS_2D, STDS_2D)):
        xs = cx + s * _normals(rng, SIZE_2D)
        ys = cy + s * _normals(rng, SIZE_2D)
        _check_sample_mean(xs, cx, s, SIZE_2D)
        _check_sample_mean(ys, cy, s, SIZE_2D)
        parts.append(np.column_stack([xs, ys]))
        labels.append(np.full(SIZE_2D, i, dtype=np.int64))
    lo, hi = BOX_2D
    parts.append(np.column_stack([rng.uniform(lo, hi, N_ISOLATED_2D), rng.uniform(lo, hi, N_ISOLATED_2D)]))
    labels.append(np.full(N_ISOLATED_2D, -1, dtype=np.int64))
    (ax, ay), astd, asize = ANOM_CLUSTER_2D
    parts.append(np.column_stack([ax + astd * _normals(rng, asize), ay + astd * _normals(rng, asize)]))
    labels.append(np.full(asize, -1, dtype=np.int64))

    features = np.vstack(parts)
    truth = np.concatenate(labels)
    spec = BenchmarkSpec(
        cluster_centers=CENTERS_2D,
        cluster_stds=STDS_2D,
        cluster_sizes=(SIZE_2D,) * 8,
        n_isolated_anomalies=N_ISOLATED_2D,
        anomalous_cluster=ANOM_CLUSTER_2D,
        n_mislabelled_seeds=MISLABELLED_2D,
        rng_seed=rng_seed,
        extras={"bench": "2d", "box": f"{lo},{hi}"},
    )
    return Dataset(features, truth), spec


def _check_sample_mean(values: np.ndarray, center: float, std: float, n: int) -> None:
    # generator self-test: sample mean within 5 standard errors of the target
    bound = 5.0 * std / np.sqrt(n)
    got = float(np.mean(values))
    if abs(got - center) > bound:
        raise AssertionError(f"sample mean {got} departs from {center} by more than {bound}")


def sample_seeds(
    dataset: Dataset,
    fraction: float,
    min_per_cluster: int,
    n_mislabelled: int,
    rng_seed: int,
) -> dict[int, int]:
    """Sample seed labels from the truth: a per-class uniform sample sized by
    largest-remainder shares of round(fraction*n), topped up to
    ``min_per_cluster`` (rebalanced off the largest quotas so the total is
    preserved). ``n_mislabelled`` sampled seeds get a different random cluster
    id. Truth anomalies are never seeded."""
    if dataset.truth_labels is None:
        raise ValueError("dataset has no truth labels")
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must be in (0, 1]")
    truth = dataset.truth_labels
    classes = sorted(int(c) for c in np.unique(truth) if c >= 0)
    if not classes:
        raise ValueError("no labelled classes to seed from")
    n = dataset.n
    target = int(round(fraction * n))
    sizes = {c: int((truth == c).sum()) for c in classes}
    if target < min_per_cluster * len(classes):
        raise ValueError(
            f"infeasible quotas: fraction*n = {target} < "
            f"{min_per_cluster} seeds x {len(classes)} clusters"
        )
    for c in classes:
        if sizes[c] < min_per_cluster:
            raise ValueError(f"class {c} has only {sizes[c]} points, need {min_per_cluster}")

    quota = {c: target * sizes[c] // n for c in classes}
    remainder = target - sum(quota.values())
    by_frac = sorted(classes, key=lambda c: (-(target * sizes[c] % n), c))
    for c in by_frac[:remainder]:
        quota[c] += 1
    for c in classes:
        quota[c] = max(quota[c], min_per_cluster)
    surplus = sum(quota.values()) - target
    while surplus > 0:
        c = max(classes, key=lambda c: (quota[c], -c))
        if quota[c] <= min_per_cluster:
            break
        quota[c] -= 1
        surplus -= 1
    quota = {c: min(quota[c], sizes[c]) for c in classes}

    rng = np.random.default_rng(rng_seed)
    ids: list[int] = []
    labs: list[int] = []
    for c in classes:
        pool = np.flatnonzero(truth == c)
        pick = rng.choice(pool, size=quota[c], replace=False)
        ids.extend(int(i) for i in pick)
        labs.extend([c] * quota[c])
    if n_mislabelled > len(ids):
        raise ValueError("n_mislabelled exceeds the number of seeds")
    if n_mislabelled and len(classes) < 2:
        raise ValueError("mislabelling needs at least two classes")
    for i in rng.choice(len(ids), size=n_mislabelled, replace=False) if n_mislabelled else []:
        others = [c for c in classes if c != labs[i]]
        labs[i] = int(others[rng.integers(len(others))])
    return dict(zip(ids, labs))


def save_benchmark_spec(path: str | Path, spec: BenchmarkSpec) -> None:
    lines = [f"version = {SPEC_VERSION}"]
    lines.append(f"rng_seed = {spec.rng_seed}")
    lines.append(f"n_clusters = {len(spec.cluster_centers)}")
    for i, (center, std, size) in enumerate(
        zip(spec.cluster_centers, spec.cluster_stds, spec.cluster_sizes)
    ):
        lines.append(f"center.{i} = " + " ".join(format(v, '.17g') for v in center))
        lines.append(f"std.{i} = {std:.17g}")
        lines.append(f"size.{i} = {size}")
    lines.append(f"n_isolated_anomalies = {spec.n_isolated_anomalies}")
    ac, astd, asize = spec.anomalous_cluster
    lines.append("anomalous_cluster.center = " + " ".join(format(v, '.17g') for v in ac))
    lines.append(f"anomalous_cluster.std = {astd:.17g}")
    lines.append(f"anomalous_cluster.size = {asize}")
    lines.append(f"n_mislabelled_seeds = {spec.n_mislabelled_seeds}")
    for key in sorted(spec.extras):
        lines.append(f"extra.{key} = {spec.extras[key]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_benchmark_spec(path: str | Path) -> BenchmarkSpec:
    kv: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        kv[key.strip()] = value.strip()
    if kv.get("version") != SPEC_VERSION:
        raise ValueError(f"unsupported benchmark spec version: {kv.get('version')!r}")
    k = int(kv["n_clusters"])
    centers = tuple(tuple(float(v) for v in kv[f"center.{i}"].split()) for i in range(k))
    stds = tuple(float(kv[f"std.{i}"]) for i in range(k))
    sizes = tuple(int(kv[f"size.{i}"]) for i in range(k))
    ac = tuple(float(v) for v in kv["anomalous_cluster.center"].split())
    extras = {key[len("extra."):]: v for key, v in kv.items() if key.startswith("extra.")}
    return BenchmarkSpec(
        cluster_centers=centers,
        cluster_stds=stds,
        cluster_sizes=sizes,
        n_isolated_anomalies=int(kv["n_isolated_anomalies"]),
        anomalous_cluster=(ac, float(kv["anomalous_cluster.std"]), int(kv["anomalous_cluster.size"])),
        n_mislabelled_seeds=int(kv["n_mislabelled_seeds"]),
        rng_seed=int(kv["rng_seed"]),
        extras=extras,
    )

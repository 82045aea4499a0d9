"""Seeded cluster growing: iterative anomaly ejection and absorption.

One pass visits the seeded clusters in order of tightest concentration
(ascending mean squared deviation, recomputed from current memberships).
Per cluster: fit the anomaly model on members, eject members beyond the
cutoff, re-fit on the survivors, then absorb every pool point the re-fit
model accepts (the model is not updated within the absorb sweep). The loop
stops at the first pass with zero label changes, on a repeated global label
state, or at the iteration cap. Finally each cluster is re-fit on its final
members and every point is scored: members under their own model, anomalies
as the maximum expectation over all cluster models.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import anomaly
from .anomaly import AnomalyModel, expectation_many, fit
from .core import ANOMALY_LABEL, Dataset, deviations

CONVERGED = "yes"
CAPPED = "no"
CYCLE = "cycle"


@dataclass(frozen=True)
class ClusterStats:
    size: int
    mu: float
    cutoff: float


@dataclass(frozen=True)
class RunReport:
    passes: int
    converged: str  # "yes" | "no" | "cycle"
    ejected_total: int
    absorbed_total: int
    per_cluster: dict[int, ClusterStats]
    emptied: tuple[int, ...] = ()


@dataclass(frozen=True)
class ClusterAssignment:
    labels: np.ndarray  # int64, -1 or cluster id
    scores: np.ndarray  # float64 expectation under the relevant model
    models: dict[int, AnomalyModel]


def validate_seeds(dataset: Dataset, seeds: Mapping[int, int]) -> dict[int, int]:
    if not seeds:
        raise ValueError("no seeds")
    out: dict[int, int] = {}
    for pid, cid in seeds.items():
        pid = int(pid)
        cid = int(cid)
        if not 0 <= pid < dataset.n:
            raise ValueError(f"seed references unknown point id {pid}")
        if cid < 0:
            raise ValueError(f"cluster id must be non-negative, got {cid}")
        out[pid] = cid
    return out


def order_clusters(dataset: Dataset, labels: np.ndarray) -> list[int]:
    """Cluster ids ascending by mean squared deviation of current members.

    Ties break by ascending id; empty clusters are dropped.
    """
    labels = np.asarray(labels, dtype=np.int64)
    present = sorted(int(c) for c in np.unique(labels) if c >= 0)
    keyed = []
    for cid in present:
        members = dataset.features[labels == cid]
        med = np.median(members, axis=0)
        msd = float(np.mean(np.sum((members - med) ** 2, axis=1)))
        keyed.append((msd, cid))
    if not keyed:
        raise ValueError("no seeded clusters remain")
    return [cid for _, cid in sorted(keyed)]


def _fingerprint(labels: np.ndarray) -> bytes:
    return hashlib.blake2b(labels.tobytes(), digest_size=16).digest()


def run(
    dataset: Dataset,
    seeds: Mapping[int, int],
    max_n_iterations: int = 1000,
) -> tuple[ClusterAssignment, RunReport]:
    """Grow clusters from seed labels until a fixed point, cycle, or the cap."""
    if max_n_iterations < 1:
        raise ValueError("max_n_iterations must be >= 1")
    seeds = validate_seeds(dataset, seeds)

    X = dataset.features
    labels = np.full(dataset.n, ANOMALY_LABEL, dtype=np.int64)
    for pid, cid in seeds.items():
        labels[pid] = cid

    seen = {_fingerprint(labels)}
    ejected_total = 0
    absorbed_total = 0
    emptied: list[int] = []
    passes = 0
    converged = CAPPED

    while passes < max_n_iterations:
        passes += 1
        changes = 0
        try:
            order = order_clusters(dataset, labels)
        except ValueError:
            converged = CONVERGED  # every cluster emptied: nothing can change
            break
        for cid in order:
            mask = labels == cid
            if not mask.any():
                continue  # emptied earlier this run
            model = fit(X[mask])
            dev = deviations(X[mask], model.median)
            eject = dev > model.cutoff
            if eject.any():
                labels[np.flatnonzero(mask)[eject]] = ANOMALY_LABEL
                n_ej = int(eject.sum())
                ejected_total += n_ej
                changes += n_ej
            mask = labels == cid
            if not mask.any():
                emptied.append(cid)
                continue
            model = fit(X[mask])  # re-fit on survivors; fixed during the sweep
            pool = np.flatnonzero(labels == ANOMALY_LABEL)
            if pool.size:
                dev = deviations(X[pool], model.median)
                absorb = dev <= model.cutoff
                if absorb.any():
                    labels[pool[absorb]] = cid
                    n_ab = int(absorb.sum())
                    absorbed_total += n_ab
                    changes += n_ab
        if changes == 0:
            converged = CONVERGED
            break
        fp = _fingerprint(labels)
        if fp in seen:
            converged = CYCLE
            break
        seen.add(fp)

    # final re-fit per surviving cluster; scoring only, labels frozen
    models: dict[int, AnomalyModel] = {}
    for cid in sorted(int(c) for c in np.unique(labels) if c >= 0):
        models[cid] = fit(X[labels == cid])

    scores = np.zeros(dataset.n, dtype=np.float64)
    for cid, model in models.items():
        mask = labels == cid
        scores[mask] = expectation_many(model, deviations(X[mask], model.median))
    pool = np.flatnonzero(labels == ANOMALY_LABEL)
    if pool.size and models:
        best = np.zeros(pool.size, dtype=np.float64)
        for cid in sorted(models):
            e = expectation_many(models[cid], deviations(X[pool], models[cid].median))
            best = np.maximum(best, e)
        scores[pool] = best

    per_cluster = {
        cid: ClusterStats(size=int((labels == cid).sum()), mu=m.mu, cutoff=m.cutoff)
        for cid, m in models.items()
    }
    report = RunReport(
        passes=passes,
        converged=converged,
        ejected_total=ejected_total,
        absorbed_total=absorbed_total,
        per_cluster=per_cluster,
        emptied=tuple(emptied),
    )
    return ClusterAssignment(labels=labels, scores=scores, models=models), report


def assign_new(models: Mapping[int, AnomalyModel], x) -> tuple[int, float]:
    """Assign a new point to the cluster with the highest expectation.

    Returns (cluster id, score) when the best expectation is at least 1,
    otherwise (-1, score). Ties break by ascending cluster id.
    """
    if not models:
        raise ValueError("no models")
    best_cid = ANOMALY_LABEL
    best_score = -1.0
    for cid in sorted(int(c) for c in models):
        _, score = anomaly.classify(models[cid], x)
        if score > best_score:
            best_score = score
            best_cid = cid
    if best_score >= 1.0:
        return best_cid, best_score
    return ANOMALY_LABEL, best_score

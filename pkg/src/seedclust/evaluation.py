"""Scoring of cluster assignments against ground truth.

The anomaly label (-1) is an ordinary class here; no permutation matching is
done because seed labels already fix cluster identities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bench import BenchmarkSpec
from .core import Dataset


@dataclass(frozen=True)
class ClassScore:
    precision: float | None  # None when the denominator is empty
    recall: float | None


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    per_class: dict[int, ClassScore]
    confusion: dict[tuple[int, int], int]  # (truth, predicted) -> count
    n: int


def _labels_of(pred) -> np.ndarray:
    # accepts a ClusterAssignment or a plain label vector
    return np.asarray(getattr(pred, "labels", pred), dtype=np.int64)


def evaluate(pred_labels, truth_labels) -> EvalReport:
    pred = _labels_of(pred_labels)
    truth = np.asarray(truth_labels, dtype=np.int64)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise ValueError(f"label vectors must match: {pred.shape} vs {truth.shape}")
    n = pred.shape[0]
    if n == 0:
        raise ValueError("nothing to evaluate")

    accuracy = float(np.mean(pred == truth))
    confusion: dict[tuple[int, int], int] = {}
    for t, p in zip(truth.tolist(), pred.tolist()):
        confusion[(t, p)] = confusion.get((t, p), 0) + 1

    per_class: dict[int, ClassScore] = {}
    for c in sorted(set(truth.tolist()) | set(pred.tolist())):
        truth_c = truth == c
        pred_c = pred == c
        tp = int(np.sum(truth_c & pred_c))
        precision = tp / int(pred_c.sum()) if pred_c.any() else None
        recall = tp / int(truth_c.sum()) if truth_c.any() else None
        per_class[c] = ClassScore(precision=precision, recall=recall)
    return EvalReport(accuracy=accuracy, per_class=per_class, confusion=confusion, n=n)


def cluster_recovery(
    pred_labels,
    truth_labels,
    dataset: Dataset,
    spec: BenchmarkSpec,
    radius_in_stds: float,
) -> dict[int, float | None]:
    """Per true cluster: the fraction of its points within radius_in_stds of
    the true center that received the correct label (None for empty cores)."""
    pred = _labels_of(pred_labels)
    truth = np.asarray(truth_labels, dtype=np.int64)
    if pred.shape[0] != dataset.n or truth.shape[0] != dataset.n:
        raise ValueError("label vectors must match the dataset size")
    known = set(range(len(spec.cluster_centers)))
    unknown = sorted(set(truth.tolist()) - known - {-1})
    if unknown:
        raise ValueError(f"unknown cluster id {unknown[0]}")

    out: dict[int, float | None] = {}
    for cid, (center, std) in enumerate(zip(spec.cluster_centers, spec.cluster_stds)):
        dist = np.sqrt(np.sum((dataset.features - np.asarray(center)) ** 2, axis=1))
        core = (truth == cid) & (dist <= radius_in_stds * std)
        out[cid] = float(np.mean(pred[core] == cid)) if core.any() else None
    return out


def render_report(report: EvalReport) -> str:
    """Plain-text table for terminals."""
    lines = [f"accuracy: {report.accuracy:.6f}  (n = {report.n})", ""]
    lines.append(f"{'class':>8} {'precision':>11} {'recall':>11}")
    for c, s in sorted(report.per_class.items()):
        p = "undefined" if s.precision is None else f"{s.precision:.6f}"
        r = "undefined" if s.recall is None else f"{s.recall:.6f}"
        lines.append(f"{c:>8} {p:>11} {r:>11}")
    lines.append("")
    lines.append(f"{'truth':>8} {'pred':>8} {'count':>9}")
    for (t, p), cnt in sorted(report.confusion.items()):
        lines.append(f"{t:>8} {p:>8} {cnt:>9}")
    return "\n".join(lines)


def report_to_kv(report: EvalReport) -> str:
    """Machine-readable key-value rendering."""
    lines = [f"accuracy = {report.accuracy:.17g}", f"n = {report.n}"]
    for c, s in sorted(report.per_class.items()):
        p = "undefined" if s.precision is None else format(s.precision, ".17g")
        r = "undefined" if s.recall is None else format(s.recall, ".17g")
        lines.append(f"precision.{c} = {p}")
        lines.append(f"recall.{c} = {r}")
    for (t, p), cnt in sorted(report.confusion.items()):
        lines.append(f"confusion.{t}.{p} = {cnt}")
    return "\n".join(lines) + "\n"

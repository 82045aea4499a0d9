"""CSV ingestion/emission and model persistence.

All emissions are deterministic: stable column order and floats written with
17 significant digits, which round-trip to the same doubles.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .anomaly import AnomalyModel
from .core import Dataset
from .engine import ClusterAssignment, RunReport

MODEL_VERSION = "seedclust-model/1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def peek_header(path: str | Path) -> list[str] | None:
    """Column names from the first CSV line, or None for an empty file."""
    with Path(path).open(newline="", encoding="utf-8-sig") as fh:
        row = next(csv.reader(fh), None)
    return [h.strip() for h in row] if row else None


def load_csv(
    path: str | Path,
    label_column: str | None = None,
    id_column: str | None = None,
) -> Dataset:
    """Read a numeric CSV with a header row into a Dataset.

    Errors name the offending cell as (line, column), both 1-based with the
    header on line 1.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        for col in (label_column, id_column):
            if col is not None and col not in header:
                raise ValueError(f"{path}: column {col!r} not found in header")
        label_idx = header.index(label_column) if label_column is not None else None
        id_idx = header.index(id_column) if id_column is not None else None
        feature_idx = [
            i for i in range(len(header)) if i != label_idx and i != id_idx
        ]
        feature_names = tuple(header[i] for i in feature_idx)

        rows: list[list[float]] = []
        labels: list[int] = []
        ids: list[int] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"{path}: ragged row at line {lineno}: "
                    f"{len(row)} cells, expected {len(header)}"
                )
            feats = []
            for i in feature_idx:
                cell = row[i].strip()
                try:
                    value = float(cell)
                except ValueError:
                    raise ValueError(
                        f"{path}: non-numeric cell {cell!r} at ({lineno}, {i + 1})"
                    ) from None
                if not np.isfinite(value):
                    raise ValueError(f"{path}: non-finite cell {cell!r} at ({lineno}, {i + 1})")
                feats.append(value)
            rows.append(feats)
            if label_idx is not None:
                cell = row[label_idx].strip()
                try:
                    labels.append(int(cell))
                except ValueError:
                    raise ValueError(
                        f"{path}: non-integer label {cell!r} at ({lineno}, {label_idx + 1})"
                    ) from None
            if id_idx is not None:
                cell = row[id_idx].strip()
                try:
                    ids.append(int(cell))
                except ValueError:
                    raise ValueError(
                        f"{path}: non-integer id {cell!r} at ({lineno}, {id_idx + 1})"
                    ) from None

    if not rows:
        raise ValueError(f"{path}: empty dataset")
    features = np.asarray(rows, dtype=np.float64)
    truth = np.asarray(labels, dtype=np.int64) if label_idx is not None else None
    if id_idx is not None:
        order = np.argsort(np.asarray(ids))
        sorted_ids = np.asarray(ids)[order]
        if not np.array_equal(sorted_ids, np.arange(len(rows))):
            raise ValueError(f"{path}: ids must be a dense permutation of 0..n-1")
        features = features[order]
        if truth is not None:
            truth = truth[order]
    return Dataset(features, truth, column_names=feature_names)


def save_dataset_csv(path: str | Path, dataset: Dataset) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = list(dataset.column_names)
        if dataset.truth_labels is not None:
            header.append("label")
        writer.writerow(header)
        for i in range(dataset.n):
            row = [_fmt(v) for v in dataset.features[i]]
            if dataset.truth_labels is not None:
                row.append(str(int(dataset.truth_labels[i])))
            writer.writerow(row)


def save_results(path: str | Path, assignment: ClusterAssignment) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "label", "score"])
        for i, (lab, score) in enumerate(zip(assignment.labels, assignment.scores)):
            writer.writerow([i, int(lab), _fmt(score)])


def load_results(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a results CSV back as (labels, scores), ordered by id."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty file")
        triples = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"{path}: ragged row at line {lineno}")
            triples.append((int(row[0]), int(row[1]), float(row[2])))
    if not triples:
        raise ValueError(f"{path}: no results")
    triples.sort()
    ids = [t[0] for t in triples]
    if ids != list(range(len(ids))):
        raise ValueError(f"{path}: ids must be a dense permutation of 0..n-1")
    labels = np.asarray([t[1] for t in triples], dtype=np.int64)
    scores = np.asarray([t[2] for t in triples], dtype=np.float64)
    return labels, scores


def save_seeds(path: str | Path, seeds: dict[int, int]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "cluster_id"])
        for pid in sorted(seeds):
            writer.writerow([pid, seeds[pid]])


def load_seeds(path: str | Path) -> dict[int, int]:
    """Read an id,cluster_id CSV; duplicate or malformed ids are errors."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: no seeds")
        seeds: dict[int, int] = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: ragged row at line {lineno}")
            try:
                pid, cid = int(row[0]), int(row[1])
            except ValueError:
                raise ValueError(f"{path}: non-integer entry at line {lineno}") from None
            if pid in seeds:
                raise ValueError(f"{path}: duplicate id {pid} at line {lineno}")
            if cid < 0:
                raise ValueError(f"{path}: cluster id must be non-negative at line {lineno}")
            seeds[pid] = cid
    if not seeds:
        raise ValueError(f"{path}: no seeds")
    return seeds


def save_models(path: str | Path, models: dict[int, AnomalyModel]) -> None:
    payload = {
        "version": MODEL_VERSION,
        "clusters": [
            {
                "id": int(cid),
                "median": [float(v) for v in m.median],
                "n": int(m.n),
                "mu": float(m.mu),
                "support": float(m.support),
                "gap_star": float(m.gap_star),
                "edge": float(m.edge),
                "cutoff": float(m.cutoff),
            }
            for cid, m in sorted(models.items())
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_models(path: str | Path) -> dict[int, AnomalyModel]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not a model file ({exc})") from None
    if not isinstance(payload, dict) or payload.get("version") != MODEL_VERSION:
        raise ValueError(
            f"{path}: unsupported model version {payload.get('version')!r}, "
            f"expected {MODEL_VERSION!r}"
        )
    models: dict[int, AnomalyModel] = {}
    for entry in payload["clusters"]:
        models[int(entry["id"])] = AnomalyModel(
            median=np.asarray(entry["median"], dtype=np.float64),
            n=int(entry["n"]),
            mu=float(entry["mu"]),
            support=float(entry["support"]),
            gap_star=float(entry["gap_star"]),
            edge=float(entry["edge"]),
            cutoff=float(entry["cutoff"]),
        )
    return models


def report_to_kv(report: RunReport) -> str:
    lines = [
        f"passes = {report.passes}",
        f"converged = {report.converged}",
        f"ejected_total = {report.ejected_total}",
        f"absorbed_total = {report.absorbed_total}",
    ]
    for cid in sorted(report.per_cluster):
        st = report.per_cluster[cid]
        lines.append(f"cluster.{cid}.size = {st.size}")
        lines.append(f"cluster.{cid}.mu = {_fmt(st.mu)}")
        lines.append(f"cluster.{cid}.cutoff = {_fmt(st.cutoff)}")
    if report.emptied:
        lines.append("emptied = " + " ".join(str(c) for c in report.emptied))
    return "\n".join(lines) + "\n"

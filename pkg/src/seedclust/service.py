"""HTTP facade over the engine for the interactive labeling loop.

Datasets and run snapshots are persisted in the data directory using the same
file formats as the CLI; there is no database. Runs execute asynchronously on
a daemon thread, at most one per dataset at a time; completed snapshots are
immutable.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import engine, io
from .core import Dataset


class SeedEntry(BaseModel):
    point_id: int
    cluster_id: int


class RunRequest(BaseModel):
    max_iter: int = 1000


class PredictRequest(BaseModel):
    points: list[list[float]]


@dataclass
class RunState:
    run_id: str
    dataset_id: str
    status: str  # "running" | "done" | "failed"
    max_iter: int
    seeds: dict[int, int]
    error: str | None = None
    assignment: engine.ClusterAssignment | None = None
    report: engine.RunReport | None = None


@dataclass
class DatasetState:
    dataset_id: str
    dataset: Dataset
    created_at: str
    dir: Path
    seeds: dict[int, int] = field(default_factory=dict)
    latest_run: str | None = None
    active_run: str | None = None

    def handle(self) -> dict:
        return {
            "id": self.dataset_id,
            "n": self.dataset.n,
            "d": self.dataset.dim,
            "created_at": self.created_at,
            "latest_run": self.latest_run,
        }


class Registry:
    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.datasets: dict[str, DatasetState] = {}
        self.runs: dict[str, RunState] = {}
        self.lock = threading.Lock()
        (data_dir / "datasets").mkdir(parents=True, exist_ok=True)
        self._rehydrate()

    def _rehydrate(self) -> None:
        for ds_dir in sorted((self.data_dir / "datasets").iterdir()):
            data_csv = ds_dir / "data.csv"
            if not data_csv.is_file():
                continue
            dsid = ds_dir.name
            dataset = _load_uploaded_csv(data_csv)
            created = datetime.fromtimestamp(
                data_csv.stat().st_mtime, tz=timezone.utc
            ).isoformat()
            state = DatasetState(dsid, dataset, created, ds_dir)
            seeds_csv = ds_dir / "seeds.csv"
            if seeds_csv.is_file():
                state.seeds = io.load_seeds(seeds_csv)
            runs_dir = ds_dir / "runs"
            if runs_dir.is_dir():
                for run_dir in sorted(runs_dir.iterdir(), key=lambda p: p.stat().st_mtime):
                    results = run_dir / "results.csv"
                    if not results.is_file():
                        continue
                    labels, scores = io.load_results(results)
                    models = io.load_models(run_dir / "model.json")
                    run = RunState(
                        run_id=run_dir.name,
                        dataset_id=dsid,
                        status="done",
                        max_iter=0,
                        seeds=io.load_seeds(run_dir / "seeds.csv"),
                        assignment=engine.ClusterAssignment(labels, scores, models),
                        report=None,
                    )
                    self.runs[run.run_id] = run
                    state.latest_run = run.run_id
            self.datasets[dsid] = state


def _load_uploaded_csv(path: Path) -> Dataset:
    header = io.peek_header(path)
    label = "label" if header and "label" in header else None
    return io.load_csv(path, label_column=label)


def _report_json(report: engine.RunReport | None) -> dict | None:
    if report is None:
        return None
    return {
        "passes": report.passes,
        "converged": report.converged,
        "ejected_total": report.ejected_total,
        "absorbed_total": report.absorbed_total,
        "per_cluster": {
            str(cid): {"size": st.size, "mu": st.mu, "cutoff": st.cutoff}
            for cid, st in sorted(report.per_cluster.items())
        },
        "emptied": list(report.emptied),
    }


def _models_json(models: dict) -> dict:
    return {
        str(cid): {
            "median": [float(v) for v in m.median],
            "n": m.n,
            "mu": m.mu,
            "support": m.support,
            "gap_star": m.gap_star,
            "edge": m.edge,
            "cutoff": m.cutoff,
        }
        for cid, m in sorted(models.items())
    }


def create_app(data_dir: Path, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="seedclust")
    registry = Registry(Path(data_dir))
    app.state.registry = registry

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def get_dataset(dataset_id: str) -> DatasetState:
        ds = registry.datasets.get(dataset_id)
        if ds is None:
            raise HTTPException(404, f"unknown dataset {dataset_id}")
        return ds

    def get_run(run_id: str) -> RunState:
        run = registry.runs.get(run_id)
        if run is None:
            raise HTTPException(404, f"unknown run {run_id}")
        return run

    @app.post("/api/datasets", status_code=201)
    async def upload_dataset(request: Request):
        body = await request.body()
        if not body:
            raise HTTPException(400, "empty body")
        dsid = uuid.uuid4().hex[:12]
        ds_dir = registry.data_dir / "datasets" / dsid
        ds_dir.mkdir(parents=True)
        path = ds_dir / "data.csv"
        path.write_bytes(body)
        try:
            dataset = _load_uploaded_csv(path)
        except ValueError as exc:
            path.unlink()
            ds_dir.rmdir()
            raise HTTPException(400, str(exc)) from None
        created = datetime.now(timezone.utc).isoformat()
        state = DatasetState(dsid, dataset, created, ds_dir)
        with registry.lock:
            registry.datasets[dsid] = state
        return state.handle()

    @app.get("/api/datasets/{dataset_id}/points")
    def get_points(dataset_id: str, offset: int = 0, limit: int = 1000):
        ds = get_dataset(dataset_id)
        if offset < 0 or limit < 1:
            raise HTTPException(422, "offset must be >= 0 and limit >= 1")
        limit = min(limit, 20000)
        run = registry.runs.get(ds.latest_run) if ds.latest_run else None
        labels = run.assignment.labels if run and run.assignment else None
        scores = run.assignment.scores if run and run.assignment else None
        rows = []
        hi = min(offset + limit, ds.dataset.n)
        for i in range(offset, hi):
            row = {
                "id": i,
                "features": [float(v) for v in ds.dataset.features[i]],
                "label": int(labels[i]) if labels is not None else -1,
                "score": float(scores[i]) if scores is not None else None,
            }
            if ds.dataset.truth_labels is not None:
                row["truth"] = int(ds.dataset.truth_labels[i])
            rows.append(row)
        return {
            "total": ds.dataset.n,
            "offset": offset,
            "limit": limit,
            "columns": list(ds.dataset.column_names),
            "points": rows,
        }

    @app.put("/api/datasets/{dataset_id}/seeds")
    def put_seeds(dataset_id: str, entries: list[SeedEntry]):
        ds = get_dataset(dataset_id)
        if not entries:
            raise HTTPException(422, "at least one seed is required")
        seeds: dict[int, int] = {}
        for e in entries:
            if e.point_id in seeds:
                raise HTTPException(422, f"duplicate point_id {e.point_id}")
            if not 0 <= e.point_id < ds.dataset.n:
                raise HTTPException(422, f"unknown point_id {e.point_id}")
            if e.cluster_id < 0:
                raise HTTPException(422, f"cluster_id must be non-negative, got {e.cluster_id}")
            seeds[e.point_id] = e.cluster_id
        with registry.lock:
            ds.seeds = seeds
        io.save_seeds(ds.dir / "seeds.csv", seeds)
        return {"accepted": len(seeds)}

    @app.post("/api/datasets/{dataset_id}/runs", status_code=202)
    def start_run(dataset_id: str, req: RunRequest | None = None):
        ds = get_dataset(dataset_id)
        max_iter = req.max_iter if req is not None else 1000
        if max_iter < 1:
            raise HTTPException(422, "max_iter must be >= 1")
        if not ds.seeds:
            raise HTTPException(422, "dataset has no seeds")
        with registry.lock:
            if ds.active_run is not None:
                raise HTTPException(409, f"run {ds.active_run} already in progress")
            run_id = uuid.uuid4().hex[:12]
            run = RunState(
                run_id=run_id,
                dataset_id=dataset_id,
                status="running",
                max_iter=max_iter,
                seeds=dict(ds.seeds),
            )
            registry.runs[run_id] = run
            ds.active_run = run_id

        def work():
            try:
                assignment, report = engine.run(ds.dataset, run.seeds, max_n_iterations=max_iter)
                run_dir = ds.dir / "runs" / run_id
                run_dir.mkdir(parents=True, exist_ok=True)
                io.save_results(run_dir / "results.csv", assignment)
                io.save_models(run_dir / "model.json", assignment.models)
                (run_dir / "report.txt").write_text(io.report_to_kv(report), encoding="utf-8")
                io.save_seeds(run_dir / "seeds.csv", run.seeds)
                with registry.lock:
                    run.assignment = assignment
                    run.report = report
                    run.status = "done"
                    ds.latest_run = run_id
            except Exception as exc:  # surfaced via the run status
                with registry.lock:
                    run.status = "failed"
                    run.error = str(exc)
            finally:
                with registry.lock:
                    ds.active_run = None

        threading.Thread(target=work, daemon=True).start()
        return {"run_id": run_id, "status": "running"}

    @app.get("/api/runs/{run_id}")
    def get_run_snapshot(run_id: str):
        run = get_run(run_id)
        base = {"run_id": run.run_id, "dataset_id": run.dataset_id, "status": run.status}
        if run.status == "failed":
            return {**base, "error": run.error}
        if run.status != "done" or run.assignment is None:
            return base
        return {
            **base,
            "labels": [int(v) for v in run.assignment.labels],
            "scores": [float(v) for v in run.assignment.scores],
            "models": _models_json(run.assignment.models),
            "report": _report_json(run.report),
            "seeds": [
                {"point_id": pid, "cluster_id": cid}
                for pid, cid in sorted(run.seeds.items())
            ],
        }

    @app.post("/api/runs/{run_id}/predict")
    def predict(run_id: str, req: PredictRequest):
        run = get_run(run_id)
        if run.status != "done" or run.assignment is None:
            raise HTTPException(409, f"run {run_id} is {run.status}, not done")
        if not req.points:
            raise HTTPException(422, "no points supplied")
        dim = next(iter(run.assignment.models.values())).dim
        labels, scores = [], []
        for p in req.points:
            if len(p) != dim:
                raise HTTPException(422, f"dimension mismatch: got {len(p)}, expected {dim}")
            if not np.isfinite(p).all():
                raise HTTPException(422, "points must be finite")
            label, score = engine.assign_new(run.assignment.models, p)
            labels.append(int(label))
            scores.append(float(score))
        return {"labels": labels, "scores": scores}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

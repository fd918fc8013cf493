"""HTTP service exposing analysis and optimization to interactive clients.

Layouts are registered once and referenced by id. Optimization runs as a
background job: clients poll its status and fetch members when done.
Accepting a member as the next base layout (POST /rounds) registers the
member's document as a fresh layout, closing the iteration loop.

State lives in process memory behind a lock; LAYOUTFORGE_WORKERS caps
how many jobs run concurrently (default 2).
"""

from __future__ import annotations

import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .documents import (
    LayoutDocument,
    evaluation_summary,
    heatmap_document,
    parse_config,
    parse_layout,
    parse_penalties,
    round_manifest,
    serialize_layout,
    with_graph,
)
from .errors import EmptyRegionError, JobCancelled, SchemaError
from .pipeline import OptimizationConfig, RoundResult, evaluate, run_round


def worker_count(default: int = 2) -> int:
    """Job concurrency cap from LAYOUTFORGE_WORKERS, at least 1."""
    raw = os.environ.get("LAYOUTFORGE_WORKERS", "")
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(1, value)


@dataclass
class Job:
    id: str
    layout_id: str
    seed: int
    config: OptimizationConfig
    status: str = "queued"  # queued | running | done | failed | cancelled
    progress: dict[str, Any] = field(default_factory=lambda: {"stage": "", "evaluations": 0})
    error: str | None = None
    result: RoundResult | None = None
    members: list[dict[str, Any]] = field(default_factory=list)
    manifest: dict[str, Any] | None = None
    cancel: threading.Event = field(default_factory=threading.Event)


class Store:
    """In-memory layouts and jobs, guarded by one lock."""

    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.layouts: dict[str, LayoutDocument] = {}
        self.jobs: dict[str, Job] = {}

    def new_id(self) -> str:
        return uuid.uuid4().hex[:12]


def _error(status: int, message: str, path: str = "") -> JSONResponse:
    body: dict[str, Any] = {"error": {"message": message}}
    if path:
        body["error"]["path"] = path
    return JSONResponse(status_code=status, content=body)


def _job_view(job: Job) -> dict[str, Any]:
    view: dict[str, Any] = {
        "job_id": job.id,
        "layout_id": job.layout_id,
        "seed": job.seed,
        "status": job.status,
        "progress": dict(job.progress),
    }
    if job.error:
        view["error"] = job.error
    if job.status == "done":
        view["member_count"] = len(job.members)
    return view


def _run_job(store: Store, job: Job, doc: LayoutDocument, penalties) -> None:
    with store.lock:
        if job.cancel.is_set():
            job.status = "cancelled"
            return
        job.status = "running"

    def on_generation(stage: str, evaluations: int) -> None:
        if job.cancel.is_set():
            raise JobCancelled("cancelled by client")
        with store.lock:
            job.progress = {"stage": stage, "evaluations": evaluations}

    try:
        problem = doc.to_problem(penalties)
        result = run_round(problem, job.config, seed=job.seed, on_generation=on_generation)
        members = []
        for m in result.members:
            member_doc = with_graph(doc, m.graph)
            entry: dict[str, Any] = {
                "index": m.index,
                "params": [float(v) for v in m.params],
                "summary": evaluation_summary(m.evaluation, job.config),
                "layout": serialize_layout(member_doc),
            }
            if m.evaluation.report is not None:
                entry["heatmap"] = heatmap_document(m.evaluation.report, doc.grid.pitch)
            members.append(entry)
        manifest = round_manifest(
            result, [{"member": f"member_{m.index:02d}"} for m in result.members]
        )
    except JobCancelled:
        with store.lock:
            job.status = "cancelled"
        return
    except Exception as exc:  # job errors surface via status, not a dead thread
        with store.lock:
            job.status = "failed"
            job.error = str(exc)
        return
    with store.lock:
        job.result = result
        job.members = members
        job.manifest = manifest
        job.status = "done"
        job.progress = {"stage": "done", "evaluations": result.evaluations}


def create_app() -> FastAPI:
    """A fresh service instance with its own store and worker pool."""
    app = FastAPI(title="layoutforge")
    store = Store()
    pool = ThreadPoolExecutor(max_workers=worker_count())
    app.state.store = store

    @app.post("/layouts")
    def create_layout(document: dict) -> Any:
        try:
            doc = parse_layout(document)
        except SchemaError as exc:
            return _error(400, str(exc), exc.path)
        layout_id = store.new_id()
        with store.lock:
            store.layouts[layout_id] = doc
        return {"layout_id": layout_id, "name": doc.name}

    @app.post("/analyze")
    def analyze(body: dict) -> Any:
        layout_id = body.get("layout_id")
        if layout_id is not None:
            with store.lock:
                doc = store.layouts.get(layout_id)
            if doc is None:
                return _error(404, f"unknown layout {layout_id!r}")
        elif "document" in body:
            try:
                doc = parse_layout(body["document"])
            except SchemaError as exc:
                return _error(400, str(exc), exc.path)
        else:
            return _error(400, "layout_id or document required")
        resolution = body.get("resolution")
        if resolution is not None:
            try:
                resolution = float(resolution)
            except (TypeError, ValueError):
                return _error(400, "resolution must be a number", "resolution")
            if resolution <= 0:
                return _error(400, "resolution must be positive", "resolution")
            import dataclasses

            doc = dataclasses.replace(
                doc, grid=dataclasses.replace(doc.grid, resolution=resolution)
            )
        problem = doc.to_problem()
        try:
            ev = evaluate(
                problem, np.zeros(problem.params.dimension), roots="all", keep_report=True
            )
        except EmptyRegionError as exc:
            return _error(400, str(exc))
        if ev.empty_region or ev.report is None:
            return _error(400, "analysis regions contain no vertices")
        return {
            "summary": {
                "degree": ev.mean_degree,
                "depth": ev.mean_depth,
                "entropy": ev.mean_entropy,
                "combined": ev.combined,
                "clearance_area": ev.clearance_area,
                "penalty": ev.penalty,
                "vertex_count": ev.vertex_count,
            },
            "heatmap": heatmap_document(ev.report, doc.grid.pitch),
        }

    @app.post("/jobs")
    def create_job(body: dict) -> Any:
        layout_id = body.get("layout_id")
        if not layout_id:
            return _error(400, "layout_id required")
        with store.lock:
            doc = store.layouts.get(layout_id)
        if doc is None:
            return _error(404, f"unknown layout {layout_id!r}")
        try:
            config = parse_config(body.get("config") or {})
            penalties = (
                parse_penalties(body["penalties"]) if "penalties" in body else None
            )
            if "members" in body:
                members = int(body["members"])
                if members < 1:
                    return _error(400, "members must be at least 1", "members")
                import dataclasses

                config = dataclasses.replace(config, members=members)
        except SchemaError as exc:
            return _error(400, str(exc), exc.path)
        except (TypeError, ValueError):
            return _error(400, "members must be an integer", "members")
        seed = body.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            return _error(400, "seed must be an integer", "seed")
        job = Job(id=store.new_id(), layout_id=layout_id, seed=seed, config=config)
        with store.lock:
            store.jobs[job.id] = job
        pool.submit(_run_job, store, job, doc, penalties)
        return JSONResponse(status_code=202, content=_job_view(job))

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> Any:
        with store.lock:
            job = store.jobs.get(job_id)
            if job is None:
                return _error(404, f"unknown job {job_id!r}")
            return _job_view(job)

    @app.get("/jobs/{job_id}/members/{index}")
    def get_member(job_id: str, index: int) -> Any:
        with store.lock:
            job = store.jobs.get(job_id)
            if job is None:
                return _error(404, f"unknown job {job_id!r}")
            if job.status != "done":
                return _error(409, f"job is {job.status}, members not available")
            if not 0 <= index < len(job.members):
                return _error(404, f"no member {index}")
            return job.members[index]

    @app.get("/jobs/{job_id}/manifest")
    def get_manifest(job_id: str) -> Any:
        with store.lock:
            job = store.jobs.get(job_id)
            if job is None:
                return _error(404, f"unknown job {job_id!r}")
            if job.status != "done":
                return _error(409, f"job is {job.status}, manifest not available")
            return job.manifest

    @app.post("/jobs/{job_id}/cancel")
    def cancel_job(job_id: str) -> Any:
        with store.lock:
            job = store.jobs.get(job_id)
            if job is None:
                return _error(404, f"unknown job {job_id!r}")
            if job.status in ("done", "failed", "cancelled"):
                return _job_view(job)
            job.cancel.set()
            if job.status == "queued":
                job.status = "cancelled"
            return _job_view(job)

    @app.post("/rounds")
    def accept_round(body: dict) -> Any:
        job_id = body.get("job_id")
        index = body.get("member_index")
        if job_id is None or index is None:
            return _error(400, "job_id and member_index required")
        if not isinstance(index, int) or isinstance(index, bool):
            return _error(400, "member_index must be an integer", "member_index")
        with store.lock:
            job = store.jobs.get(job_id)
            if job is None:
                return _error(404, f"unknown job {job_id!r}")
            if job.status != "done":
                return _error(409, f"job is {job.status}, members not available")
            if not 0 <= index < len(job.members):
                return _error(404, f"no member {index}")
            document = job.members[index]["layout"]
            doc = parse_layout(document)
            layout_id = store.new_id()
            store.layouts[layout_id] = doc
        return {"layout_id": layout_id, "document": document, "source_job": job_id}

    return app


app = create_app()

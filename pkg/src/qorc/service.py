"""HTTP API: job submission, scoring, fleet inspection, logs.

One process hosts both route groups (submission/lifecycle and /score); the
/score route keeps the inter-component wire contract so the scoring side
could be split out without changing clients.
"""

from __future__ import annotations

import threading
import time
from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .device import node_labels
from .errors import QueueFullError, ValidationError
from .scheduler import Scheduler, score_backend, spec_from_json

FINISHED_STATES = ("Completed", "Failed", "Unschedulable")


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


def create_app(scheduler: Scheduler, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="qorc", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.scheduler = scheduler

    @app.post("/jobs", status_code=201)
    async def post_job(request: Request):
        try:
            doc = await request.json()
        except Exception:
            return _error(400, "ValidationError", "body is not valid JSON")
        if not isinstance(doc, dict):
            return _error(400, "ValidationError", "body must be a JSON object")
        try:
            spec = spec_from_json(doc)
            job_id = scheduler.submit(spec)
        except ValidationError as exc:
            return _error(400, "ValidationError", str(exc), {"field": exc.field})
        except QueueFullError as exc:
            return _error(429, "QueueFull", str(exc))
        return JSONResponse(
            status_code=201,
            content={"job_id": job_id},
            headers={"Location": f"/jobs/{job_id}"},
        )

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        rec = scheduler.get(job_id)
        if rec is None:
            return _error(404, "UnknownJob", f"no job {job_id!r}")
        return JSONResponse(rec.to_json_dict())

    @app.get("/jobs/{job_id}/logs")
    def get_logs(job_id: str):
        rec = scheduler.get(job_id)
        if rec is None:
            return _error(404, "UnknownJob", f"no job {job_id!r}")
        if rec.state not in FINISHED_STATES:
            return _error(409, "LogsNotReady", f"job {job_id} is {rec.state}")
        return PlainTextResponse(rec.logs)

    @app.post("/score")
    async def post_score(request: Request):
        try:
            doc = await request.json()
        except Exception:
            return _error(400, "ValidationError", "body is not valid JSON")
        job_name = doc.get("job_name") if isinstance(doc, dict) else None
        backend_id = doc.get("backend_id") if isinstance(doc, dict) else None
        recs = [r for r in scheduler.records() if r.spec.name == job_name]
        if not recs:
            return _error(404, "UnknownJob", f"no job named {job_name!r}")
        node = next((n for n in scheduler.fleet if n.backend.id == backend_id), None)
        if node is None:
            return _error(404, "UnknownBackend", f"no backend {backend_id!r}")
        try:
            score = score_backend(recs[-1].spec, node, scheduler.scoring_shots)
        except Exception as exc:
            return _error(422, "ScoringFailed", f"{type(exc).__name__}: {exc}")
        return JSONResponse(score.to_json_dict())

    @app.get("/nodes")
    def get_nodes():
        return JSONResponse(
            [
                {"id": n.backend.id, "labels": asdict(node_labels(n))}
                for n in scheduler.fleet
            ]
        )

    @app.get("/cluster")
    def get_cluster():
        return JSONResponse(
            {
                "num_nodes": len(scheduler.fleet),
                "queue_depth": scheduler.queue_depth(),
                "running_job": scheduler.running_job(),
            }
        )

    return app


class Worker:
    """Background drain loop for the scheduler."""

    def __init__(self, scheduler: Scheduler, poll_s: float = 0.05):
        self._scheduler = scheduler
        self._poll_s = poll_s
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._run, daemon=True)

    def _run(self):
        while not self._stop.is_set():
            if self._scheduler.process_next() is None:
                time.sleep(self._poll_s)

    def start(self):
        self._thread.start()

    def stop(self):
        self._stop.set()
        self._thread.join(timeout=5.0)


def serve(scheduler: Scheduler, host: str, port: int):
    import uvicorn

    app = create_app(scheduler)
    worker = Worker(scheduler)
    worker.start()
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        worker.stop()

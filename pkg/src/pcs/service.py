"""HTTP surface: spectrum analysis, health, job polling, and the web UI bundle.

    GET /api/spectrum?q=<raw query>&mode=pcs|rpys[&fixture=<name>]
    GET /api/jobs/{job_id}
    GET /api/health
    GET /            static web UI bundle

Responses are deterministic per source snapshot: identical inputs against
identical data produce byte-identical bodies (the generation time lives in
the X-Generated-At header, not the body).
"""

from __future__ import annotations

import concurrent.futures
import os
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .client import ClientConfig, PatentSearchClient
from .errors import (
    ApiSchemaMismatchError,
    ApiUnreachableError,
    EmptyCorpusError,
    EmptyQueryError,
    PageCapExceededError,
    PcsError,
    UnknownFixtureError,
    UnterminatedPhraseError,
)
from .pipeline import run_pipeline
from .report import RunReport
from .spectrum import MODES

DEFAULT_SYNC_WINDOW = 15.0  # seconds before a slow request degrades to a job

_STATUS_BY_ERROR = {
    EmptyQueryError: 400,
    UnterminatedPhraseError: 400,
    UnknownFixtureError: 404,
    ApiUnreachableError: 502,
    ApiSchemaMismatchError: 502,
    PageCapExceededError: 502,
    EmptyCorpusError: 422,
}


def _error_response(exc: Exception, headers: dict[str, str] | None = None) -> JSONResponse:
    status = 500
    for klass, code in _STATUS_BY_ERROR.items():
        if isinstance(exc, klass):
            status = code
            break
    return JSONResponse(
        status_code=status,
        content={"error": {"type": type(exc).__name__, "message": str(exc)}},
        headers=headers,
    )


def spectrum_response_body(report: RunReport) -> dict[str, Any]:
    """Wire format consumed by the web UI."""
    landmark = None
    if report.landmark is not None:
        landmark = {
            "patent_id": report.landmark.patent,
            "year": report.landmark.year,
            "document_url": report.document_url(report.landmark.patent),
        }
    return {
        "query": report.query,
        "mode": report.mode,
        "source": report.source,
        "api_snapshot_date": report.api_snapshot_date,
        "citing_count": report.stats.citing_count,
        "unique_cited_count": report.stats.unique_cited_count,
        "years": [
            {
                "year": record.year,
                "c_total": record.c_total,
                "f_value": record.f_value,
                "pcs_value": record.pcs_value,
                "top_patent_id": record.top_patent_id,
                "top_patent_count": record.top_patent_count,
                "document_url": record.document_url,
            }
            for record in report.years
        ],
        "landmark": landmark,
    }


def _default_static_dir() -> Path | None:
    override = os.environ.get("PCS_STATIC_DIR")
    if override:
        return Path(override)
    bundled = Path(__file__).parent / "webui"
    return bundled if bundled.is_dir() else None


def _cache_state(directory: Path) -> str:
    probe = directory
    while not probe.exists():
        parent = probe.parent
        if parent == probe:
            return "unavailable"
        probe = parent
    if not os.access(probe, os.R_OK):
        return "unavailable"
    return "writable" if os.access(probe, os.W_OK | os.X_OK) else "read-only"


def create_app(
    config: ClientConfig | None = None,
    client: PatentSearchClient | None = None,
    static_dir: Path | str | None = None,
    cors_origin: str | None = None,
    sync_window: float | None = None,
) -> FastAPI:
    config = config or ClientConfig.from_env()
    client = client or PatentSearchClient(config)
    window = sync_window if sync_window is not None else float(
        os.environ.get("PCS_SYNC_WINDOW", DEFAULT_SYNC_WINDOW)
    )
    origin = cors_origin or os.environ.get("PCS_CORS_ORIGIN")
    static = Path(static_dir) if static_dir else _default_static_dir()

    app = FastAPI(title="patent citation spectroscopy", version=__version__, docs_url=None, redoc_url=None)
    if origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(CORSMiddleware, allow_origins=[origin], allow_methods=["GET"])

    executor = concurrent.futures.ThreadPoolExecutor(max_workers=4, thread_name_prefix="pcs-job")
    jobs: dict[str, concurrent.futures.Future] = {}
    jobs_lock = threading.Lock()

    def _stamp() -> dict[str, str]:
        return {"X-Generated-At": datetime.now(timezone.utc).isoformat(timespec="seconds")}

    def _respond_with_report(report: RunReport) -> JSONResponse:
        body = spectrum_response_body(report)
        # spectrum still returned when no landmark exists, but flagged as 422
        status = 200 if body["landmark"] is not None else 422
        return JSONResponse(status_code=status, content=body, headers=_stamp())

    @app.get("/api/spectrum")
    def handle_spectrum(q: str | None = None, mode: str = "pcs", fixture: str | None = None):
        if mode not in MODES:
            return JSONResponse(
                status_code=400,
                content={"error": {"type": "InvalidMode", "message": f"mode must be one of {MODES}"}},
                headers=_stamp(),
            )
        if q is None and fixture is None:
            return _error_response(EmptyQueryError("missing query parameter q"), headers=_stamp())

        future = executor.submit(run_pipeline, q, mode=mode, client=client, fixture=fixture)
        try:
            report = future.result(timeout=window)
        except concurrent.futures.TimeoutError:
            job_id = uuid.uuid4().hex[:12]
            with jobs_lock:
                jobs[job_id] = future
            return JSONResponse(
                status_code=202,
                content={"status": "accepted", "job_id": job_id, "status_url": f"/api/jobs/{job_id}"},
                headers=_stamp(),
            )
        except PcsError as exc:
            return _error_response(exc, headers=_stamp())
        return _respond_with_report(report)

    @app.get("/api/jobs/{job_id}")
    def handle_job(job_id: str):
        with jobs_lock:
            future = jobs.get(job_id)
        if future is None:
            return JSONResponse(
                status_code=404,
                content={"error": {"type": "UnknownJob", "message": f"no job {job_id!r}"}},
                headers=_stamp(),
            )
        if not future.done():
            return JSONResponse(
                status_code=200,
                content={"status": "running", "job_id": job_id},
                headers=_stamp(),
            )
        try:
            report = future.result()
        except PcsError as exc:
            return _error_response(exc, headers=_stamp())
        return _respond_with_report(report)

    @app.get("/api/health")
    def handle_health():
        cache_state = _cache_state(Path(config.cache_dir))
        return JSONResponse(
            content={
                "status": "ok" if cache_state == "writable" else "degraded",
                "version": __version__,
                "dialect": config.dialect,
                "cache": cache_state,
            }
        )

    if static is not None and static.is_dir():
        app.mount("/", StaticFiles(directory=static, html=True), name="webui")
    else:

        @app.get("/")
        def handle_root():
            return JSONResponse(
                content={
                    "message": "web UI bundle not installed; the API lives under /api/spectrum",
                }
            )

    return app

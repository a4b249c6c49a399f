"""HTTP JSON API over the project service.

Single writer per project: every mutation takes the project's lock. The two
long-running operations (analyze, generate) run on a worker pool and are
polled through /jobs/{id}, so request handlers never block on model latency.
Errors come back as {"code", "message", "detail"}.
"""

from __future__ import annotations

import io
import tempfile
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, UploadFile
from fastapi.responses import JSONResponse, Response

from . import project as proj
from .adapters import AdapterError, AdapterSet, StubAdapterSet
from .config import PipelineConfig
from .ideation import SimilarExpansionError, SuggestionParseError
from .media import MediaError
from .mixer import ExportError, export, mixdown, write_wav
from .scene_context import SceneAnalysisError


@dataclass
class Job:
    id: str
    kind: str
    project_id: str
    status: str = "pending"  # pending | running | done | failed
    error: dict | None = None


@dataclass
class ProjectStore:
    workspace: Path
    projects: dict[str, proj.MixProject] = field(default_factory=dict)
    locks: dict[str, threading.Lock] = field(default_factory=dict)
    _registry_lock: threading.Lock = field(default_factory=threading.Lock)

    def add(self, project: proj.MixProject) -> None:
        with self._registry_lock:
            self.projects[project.id] = project
            self.locks[project.id] = threading.Lock()

    def get(self, project_id: str) -> proj.MixProject:
        try:
            return self.projects[project_id]
        except KeyError:
            raise proj.NotFoundError(f"no project {project_id!r}")

    def lock(self, project_id: str) -> threading.Lock:
        self.get(project_id)
        return self.locks[project_id]

    def find_by_suggestion(self, suggestion_id: str) -> proj.MixProject:
        for project in self.projects.values():
            if any(s.id == suggestion_id for s in project.suggestions):
                return project
        raise proj.NotFoundError(f"no suggestion {suggestion_id!r}")

    def find_by_track(self, track_id: str) -> proj.MixProject:
        for project in self.projects.values():
            if any(t.id == track_id for t in project.tracks):
                return project
        raise proj.NotFoundError(f"no track {track_id!r}")


def _error_response(status: int, code: str, message: str, detail: str = "") -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message, "detail": detail})


def create_app(config: PipelineConfig | None = None, adapters: AdapterSet | None = None,
               workspace: str | Path | None = None) -> FastAPI:
    config = config or PipelineConfig()
    adapters = adapters or StubAdapterSet()
    workspace = Path(workspace) if workspace else Path(tempfile.mkdtemp(prefix="soundscape-"))
    workspace.mkdir(parents=True, exist_ok=True)
    store = ProjectStore(workspace=workspace)
    jobs: dict[str, Job] = {}
    pool = ThreadPoolExecutor(max_workers=2, thread_name_prefix="soundscape-job")

    app = FastAPI(title="soundscape")
    app.state.store = store
    app.state.jobs = jobs

    @app.exception_handler(proj.NotFoundError)
    async def _not_found(request: Request, exc: proj.NotFoundError):
        return _error_response(404, "not_found", str(exc))

    @app.exception_handler(proj.SchemaError)
    async def _schema(request: Request, exc: proj.SchemaError):
        return _error_response(400, "schema_error", str(exc))

    @app.exception_handler(proj.ProjectError)
    async def _project(request: Request, exc: proj.ProjectError):
        return _error_response(409, "project_error", str(exc))

    @app.exception_handler(AdapterError)
    async def _adapter(request: Request, exc: AdapterError):
        return _error_response(502, "adapter_error", str(exc))

    @app.exception_handler(MediaError)
    async def _media(request: Request, exc: MediaError):
        return _error_response(400, "media_error", str(exc))

    @app.exception_handler(ExportError)
    async def _export(request: Request, exc: ExportError):
        return _error_response(409, "export_error", str(exc))

    @app.exception_handler(ValueError)
    async def _value(request: Request, exc: ValueError):
        return _error_response(400, "invalid_request", str(exc))

    def _project_view(project: proj.MixProject) -> dict:
        return {
            "id": project.id,
            "source_media": project.source_media,
            "media_duration": project.media_duration,
            "context": project.context.to_dict() if project.context else None,
            "prompt": project.prompt,
            "suggestions": [s.to_dict() for s in project.suggestions],
            "tracks": [
                {
                    "id": t.id,
                    "suggestion_id": t.suggestion_id,
                    "category": t.category,
                    "duration_target": t.duration_target,
                    "gain_automation": [[a, b] for a, b in t.gain_automation],
                    "pan_automation": [[a, b] for a, b in t.pan_automation],
                    "user_gain_offset_db": t.user_gain_offset_db,
                }
                for t in project.tracks
            ],
            "track_errors": [
                {"suggestion_id": e.suggestion_id, "message": e.message}
                for e in project.track_errors
            ],
            "revision": project.revision,
        }

    def _submit(kind: str, project_id: str, fn) -> Job:
        job = Job(id=uuid.uuid4().hex[:12], kind=kind, project_id=project_id)
        jobs[job.id] = job

        def run():
            job.status = "running"
            try:
                with store.lock(project_id):
                    fn()
                job.status = "done"
            except (AdapterError, SceneAnalysisError, SuggestionParseError,
                    proj.ProjectError, MediaError) as exc:
                job.status = "failed"
                job.error = {"code": type(exc).__name__, "message": str(exc), "detail": ""}

        pool.submit(run)
        return job

    @app.post("/projects", status_code=201)
    async def create_project(file: UploadFile):
        dest = workspace / f"{uuid.uuid4().hex[:8]}_{file.filename}"
        dest.write_bytes(await file.read())
        project = proj.create_project(dest, config)
        store.add(project)
        return _project_view(project)

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        return _project_view(store.get(project_id))

    @app.post("/projects/{project_id}/analyze", status_code=202)
    def analyze_project(project_id: str):
        project = store.get(project_id)
        job = _submit("analyze", project_id,
                      lambda: proj.analyze(project, adapters, config))
        return {"job_id": job.id, "status": job.status}

    @app.post("/projects/{project_id}/generate", status_code=202)
    def generate_project(project_id: str):
        project = store.get(project_id)
        job = _submit("generate", project_id,
                      lambda: proj.generate_selected(project, adapters, config))
        return {"job_id": job.id, "status": job.status}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise proj.NotFoundError(f"no job {job_id!r}")
        return {"job_id": job.id, "kind": job.kind, "project_id": job.project_id,
                "status": job.status, "error": job.error}

    @app.post("/projects/{project_id}/suggestions", status_code=201)
    def add_suggestion(project_id: str, body: dict):
        text = (body or {}).get("text", "")
        with store.lock(project_id):
            suggestion = proj.add_custom_suggestion(store.get(project_id), text, adapters, config)
        return suggestion.to_dict()

    @app.post("/suggestions/{suggestion_id}/similar", status_code=201)
    def similar(suggestion_id: str):
        project = store.find_by_suggestion(suggestion_id)
        try:
            with store.lock(project.id):
                new = proj.expand_suggestion(project, suggestion_id, adapters, config)
        except SimilarExpansionError as exc:
            return _error_response(502, "similar_expansion_error", str(exc))
        return [s.to_dict() for s in new]

    @app.post("/suggestions/{suggestion_id}/select")
    def select(suggestion_id: str, body: dict):
        selected = bool((body or {}).get("selected", True))
        project = store.find_by_suggestion(suggestion_id)
        with store.lock(project.id):
            proj.select_suggestion(project, suggestion_id, selected)
        return _project_view(project)

    @app.patch("/tracks/{track_id}")
    def patch_track(track_id: str, body: dict):
        if "gain_offset_db" not in (body or {}):
            return _error_response(400, "invalid_request", "gain_offset_db required")
        project = store.find_by_track(track_id)
        with store.lock(project.id):
            proj.set_track_gain(project, track_id, float(body["gain_offset_db"]))
        return _project_view(project)

    @app.get("/projects/{project_id}/mixdown")
    def get_mixdown(project_id: str):
        project = store.get(project_id)
        with store.lock(project.id):
            mix, _ = mixdown(project.tracks, project.settings)
            buf = io.BytesIO()
            import wave

            import numpy as np

            with wave.open(buf, "wb") as wf:
                wf.setnchannels(2)
                wf.setsampwidth(2)
                wf.setframerate(mix.sample_rate)
                interleaved = np.empty(mix.left.size * 2, dtype="<i2")
                interleaved[0::2] = np.clip(np.round(mix.left * 32767), -32768, 32767).astype("<i2")
                interleaved[1::2] = np.clip(np.round(mix.right * 32767), -32768, 32767).astype("<i2")
                wf.writeframes(interleaved.tobytes())
        return Response(content=buf.getvalue(), media_type="audio/wav")

    @app.post("/projects/{project_id}/export")
    def export_project(project_id: str, which: str = "combined"):
        if which not in ("final", "combined", "individual"):
            return _error_response(400, "invalid_request", f"unknown export mode {which!r}")
        project = store.get(project_id)
        out_dir = workspace / f"export_{project.id}_{which}"
        with store.lock(project.id):
            paths = export(project, which, project.settings, out_dir,
                           muxer_command=config.muxer_command)
        return {"files": [str(p) for p in paths]}

    return app

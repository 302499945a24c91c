"""REST API over the pipeline, review queue, and evaluation sessions.

Role model: callers send an ``X-Role`` header. ``operator`` may run jobs,
manage sessions, and read de-blinded reports; ``rater`` may only fetch
review/eval tasks and submit verdicts/ratings. Rater-facing payloads never
contain system identities or label maps.
"""
from __future__ import annotations

from fastapi import Depends, FastAPI, Header, HTTPException
from pydantic import BaseModel, Field

from ..errors import (
    EditFailsAutoChecks,
    InvalidParams,
    NotLeased,
    OutOfRange,
    QueueEmpty,
    ScriptForgeError,
)
from .context import RUN_KIND, ServiceContext
from .jobs import JobManager

OPERATOR = "operator"
RATER = "rater"


def _role(x_role: str = Header(default="")) -> str:
    if x_role not in (OPERATOR, RATER):
        raise HTTPException(status_code=401, detail="missing or unknown X-Role header")
    return x_role


def _require(role: str, *allowed: str) -> None:
    if role not in allowed:
        raise HTTPException(status_code=403, detail=f"role {role!r} not permitted")


class JobRequest(BaseModel):
    kind: str
    params: dict = Field(default_factory=dict)
    idempotency_key: str | None = None


class VerdictRequest(BaseModel):
    action: str
    reviewer_id: str
    edit: dict | None = None
    reason: str | None = None


class SessionSceneIn(BaseModel):
    scene_id: str
    outputs: dict[str, str]


class SessionRequest(BaseModel):
    scenes: list[SessionSceneIn]
    human_system: str | None = None
    baseline_system: str | None = None
    seed: int = 0


class RatingRequest(BaseModel):
    scene_id: str
    label: str
    score: int
    rater_id: str
    errors: list[dict] = Field(default_factory=list)


class ComparisonRequest(BaseModel):
    scene_id: str
    choice: str
    rater_id: str


def create_app(context: ServiceContext, jobs: JobManager | None = None) -> FastAPI:
    app = FastAPI(title="scriptforge")
    manager = jobs or JobManager(context, workers=context.config.service.job_workers)
    app.state.context = context
    app.state.jobs = manager

    @app.post("/jobs", status_code=202)
    def submit_job(req: JobRequest, role: str = Depends(_role)):
        _require(role, OPERATOR)
        try:
            job = manager.submit(req.kind, req.params, req.idempotency_key)
        except InvalidParams as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return job.to_dict()

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str, role: str = Depends(_role)):
        _require(role, OPERATOR)
        job = manager.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail="unknown job")
        return job.to_dict()

    @app.get("/review/next")
    def review_next(reviewer_id: str, role: str = Depends(_role)):
        _require(role, RATER, OPERATOR)
        try:
            pair, lease = context.review_queue.next(reviewer_id)
        except QueueEmpty:
            raise HTTPException(status_code=404, detail="queue empty") from None
        return {
            "pair_id": pair.pair_id,
            "input": pair.input.to_dict(),
            "directives": pair.directives.to_dict() if pair.directives else None,
            "novel": pair.novel.to_dict(),
            "lease_expires_at": lease.expires_at,
        }

    @app.post("/review/{pair_id}/verdict")
    def review_verdict(pair_id: str, req: VerdictRequest, role: str = Depends(_role)):
        _require(role, RATER, OPERATOR)
        try:
            pair = context.review_queue.submit_verdict(
                pair_id,
                req.action,
                req.reviewer_id,
                edit_payload=req.edit,
                reject_reason=req.reason,
                auto_config=context.auto_config(),
            )
        except NotLeased as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except EditFailsAutoChecks as exc:
            raise HTTPException(
                status_code=422,
                detail={"error": "edit fails automated checks", "report": exc.report.to_dict()},
            ) from exc
        except (InvalidParams, ScriptForgeError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"pair_id": pair.pair_id, "filter_state": pair.filter_state.value}

    @app.post("/eval/sessions", status_code=201)
    def create_session(req: SessionRequest, role: str = Depends(_role)):
        _require(role, OPERATOR)
        try:
            session_id = context.create_session(
                [s.model_dump() for s in req.scenes],
                human_system=req.human_system,
                baseline_system=req.baseline_system,
                seed=req.seed,
            )
        except ScriptForgeError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"session_id": session_id}

    @app.get("/eval/sessions/{session_id}/next")
    def session_next(session_id: str, rater_id: str, role: str = Depends(_role)):
        _require(role, RATER, OPERATOR)
        try:
            task = context.next_task(session_id, rater_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session") from None
        if task is None:
            return {"done": True}
        return task

    @app.post("/eval/sessions/{session_id}/rating", status_code=201)
    def submit_rating(session_id: str, req: RatingRequest, role: str = Depends(_role)):
        _require(role, RATER, OPERATOR)
        try:
            context.submit_rating(
                session_id, req.scene_id, req.label, req.score, req.rater_id, req.errors
            )
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session or scene") from None
        except (OutOfRange, InvalidParams, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"accepted": True}

    @app.post("/eval/sessions/{session_id}/comparison", status_code=201)
    def submit_comparison(session_id: str, req: ComparisonRequest, role: str = Depends(_role)):
        _require(role, RATER, OPERATOR)
        try:
            context.submit_comparison(session_id, req.scene_id, req.choice, req.rater_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session or scene") from None
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"accepted": True}

    @app.get("/eval/sessions/{session_id}/report")
    def session_report(session_id: str, role: str = Depends(_role)):
        _require(role, OPERATOR)
        try:
            return context.session_report(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session") from None

    @app.get("/runs/{run_id}")
    def get_run(run_id: str, role: str = Depends(_role)):
        _require(role, OPERATOR)
        rec = context.store.get(RUN_KIND, run_id)
        if rec is None:
            raise HTTPException(status_code=404, detail="unknown run")
        return rec.payload

    return app

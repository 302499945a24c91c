"""Background job manager for long-running pipeline operations."""
from __future__ import annotations

import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from ..errors import InvalidParams
from .context import ServiceContext

JOB_KIND = "job"


class JobKind(Enum):
    INGEST = "ingest"
    SYNTHESIZE = "synthesize"
    FILTER = "filter"
    EXPORT = "export"
    GENERATE = "generate"


class JobState(Enum):
    QUEUED = "queued"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


_REQUIRED_PARAMS = {
    JobKind.INGEST: {"corpus_dir"},
    JobKind.SYNTHESIZE: {"profile"},
    JobKind.FILTER: set(),
    JobKind.EXPORT: {"path"},
    JobKind.GENERATE: {"input"},
}


@dataclass
class Job:
    job_id: str
    kind: JobKind
    params: dict
    state: JobState = JobState.QUEUED
    progress: dict = field(default_factory=lambda: {"completed": 0, "total": 0})
    result: dict | None = None
    error: str | None = None
    idempotency_key: str | None = None
    created_at: float = field(default_factory=time.time)

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind.value,
            "params": self.params,
            "state": self.state.value,
            "progress": dict(self.progress),
            "result": self.result,
            "error": self.error,
            "idempotency_key": self.idempotency_key,
            "created_at": self.created_at,
        }


class JobManager:
    def __init__(self, context: ServiceContext, workers: int = 2):
        self.context = context
        self._executor = ThreadPoolExecutor(max_workers=workers)
        self._jobs: dict[str, Job] = {}
        self._by_idempotency: dict[str, str] = {}
        self._futures: dict[str, object] = {}
        self._lock = threading.Lock()

    def submit(self, kind: str, params: dict, idempotency_key: str | None = None) -> Job:
        try:
            job_kind = JobKind(kind)
        except ValueError:
            raise InvalidParams(f"unknown job kind: {kind!r}") from None
        missing = _REQUIRED_PARAMS[job_kind] - set(params)
        if missing:
            raise InvalidParams(f"missing params for {kind}: {sorted(missing)}")
        with self._lock:
            if idempotency_key and idempotency_key in self._by_idempotency:
                return self._jobs[self._by_idempotency[idempotency_key]]
            job = Job(
                job_id=f"job-{uuid.uuid4().hex[:12]}",
                kind=job_kind,
                params=params,
                idempotency_key=idempotency_key,
            )
            self._jobs[job.job_id] = job
            if idempotency_key:
                self._by_idempotency[idempotency_key] = job.job_id
            self._persist(job)
            self._futures[job.job_id] = self._executor.submit(self._run, job)
        return job

    def get(self, job_id: str) -> Job | None:
        return self._jobs.get(job_id)

    def wait(self, job_id: str, timeout: float = 60.0) -> Job:
        future = self._futures.get(job_id)
        if future is not None:
            future.result(timeout=timeout)
        return self._jobs[job_id]

    def _persist(self, job: Job) -> None:
        self.context.store.put(JOB_KIND, job.job_id, job.to_dict())

    def _advance(self, job: Job, completed: int, total: int) -> None:
        # progress only moves forward
        if completed >= job.progress["completed"]:
            job.progress = {"completed": completed, "total": total}

    def _run(self, job: Job) -> None:
        job.state = JobState.RUNNING
        self._persist(job)
        progress = lambda done, total: self._advance(job, done, total)
        ctx = self.context
        p = job.params
        try:
            if job.kind is JobKind.INGEST:
                result = ctx.ingest(p["corpus_dir"], progress=progress)
            elif job.kind is JobKind.SYNTHESIZE:
                result = ctx.synthesize(
                    p["profile"],
                    mode=p.get("mode", "hybrid"),
                    limit=p.get("limit"),
                    progress=progress,
                )
            elif job.kind is JobKind.FILTER:
                result = ctx.filter_pending(progress=progress)
            elif job.kind is JobKind.EXPORT:
                result = ctx.export(
                    p["path"],
                    mode=p.get("mode", "hybrid"),
                    include_cot=p.get("include_cot", True),
                    pipeline=p.get("pipeline", "dsr"),
                )
            elif job.kind is JobKind.GENERATE:
                run = ctx.generate(
                    p["input"],
                    pipeline=p.get("pipeline", "dsr"),
                    stage1_profile=p.get("stage1_profile", "mock"),
                    stage2_profile=p.get("stage2_profile", "mock"),
                    progress=progress,
                )
                result = {"run_id": run.run_id, "state": run.state}
            else:  # pragma: no cover - enum is closed
                raise InvalidParams(f"unhandled job kind {job.kind}")
            job.result = result
            job.state = JobState.DONE
        except Exception as exc:  # noqa: BLE001 - job boundary
            job.error = f"{type(exc).__name__}: {exc}"
            job.state = JobState.FAILED
        finally:
            if job.progress["total"]:
                self._advance(job, job.progress["total"], job.progress["total"])
            self._persist(job)

    def shutdown(self) -> None:
        self._executor.shutdown(wait=True)

"""Generation runs: two-stage composition, persistence, and provenance.

Run artifacts live under `runs/<run_id>/` as separate files: the brief,
stage-1 raw and parsed output, screenplay raw text and canonical JSONL
scene, the validation report, and a digest manifest. A failed run is
persisted with whatever partials exist.
"""
from __future__ import annotations

import hashlib
import json
import os
import uuid
from dataclasses import dataclass, field
from typing import Optional

from ..backend import BackendProfile, CompletionClient, TemplateCatalog
from ..corpus import DEFAULT_DIALECT, DialectConfig, Scene
from ..synthesis.blocks import serialize_input
from ..synthesis.types import StructuredInput
from .stage1 import Stage1Output, stage1_generate
from .stage2 import ScreenplayResult, end_to_end_generate, stage2_convert
from .validate import ValidationConfig


@dataclass
class GenerationRun:
    run_id: str
    input: StructuredInput
    pipeline: str  # "dsr" | "end_to_end"
    stage1: Optional[Stage1Output] = None
    screenplay: Optional[ScreenplayResult] = None
    profiles: dict[str, str] = field(default_factory=dict)
    completion_digests: list[str] = field(default_factory=list)
    state: str = "ok"
    error: Optional[str] = None

    @classmethod
    def new_id(cls) -> str:
        return f"run-{uuid.uuid4().hex[:12]}"

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "input": self.input.to_dict(),
            "pipeline": self.pipeline,
            "stage1": self.stage1.to_dict() if self.stage1 else None,
            "screenplay": (
                {
                    "raw_text": self.screenplay.raw_text,
                    "scene": self.screenplay.scene.to_dict(),
                    "validation": self.screenplay.validation.to_dict(),
                    "digest": self.screenplay.digest,
                }
                if self.screenplay
                else None
            ),
            "profiles": dict(self.profiles),
            "completion_digests": list(self.completion_digests),
            "state": self.state,
            "error": self.error,
        }


def persist_run(run: GenerationRun, runs_dir: str) -> str:
    run_dir = os.path.join(runs_dir, run.run_id)
    os.makedirs(run_dir, exist_ok=True)

    def write(name: str, content: str) -> None:
        with open(os.path.join(run_dir, name), "w", encoding="utf-8") as fh:
            fh.write(content)

    def write_json(name: str, obj) -> None:
        write(name, json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True))

    write_json("input.json", run.input.to_dict())
    if run.stage1:
        write("stage1_raw.txt", run.stage1.raw_text)
        write_json("stage1_parsed.json", run.stage1.to_dict())
    if run.screenplay:
        write("screenplay.txt", run.screenplay.raw_text)
        write("scene.jsonl", run.screenplay.scene.to_json() + "\n")
        write_json("validation.json", run.screenplay.validation.to_dict())
    write_json("digests.json", {"completion_digests": run.completion_digests})
    write_json("run.json", run.to_dict())
    return run_dir


def _derived_run_id(input: StructuredInput, pipeline: str, *model_names: str) -> str:
    """Content-derived so identical briefs replay to identical run artifacts."""
    seed = "\x1f".join([serialize_input(input), pipeline, *model_names])
    return f"run-{hashlib.sha256(seed.encode()).hexdigest()[:12]}"


def run_dsr(
    input: StructuredInput,
    stage1_profile: BackendProfile,
    stage2_profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    runs_dir: str | None = None,
    dialect: DialectConfig = DEFAULT_DIALECT,
    lexicon: list[str] | None = None,
    validation_config: ValidationConfig | None = None,
) -> GenerationRun:
    """Stage 1 then Stage 2; the run is persisted even on failure."""
    run = GenerationRun(
        run_id=_derived_run_id(input, "dsr", stage1_profile.model_name,
                               stage2_profile.model_name),
        input=input,
        pipeline="dsr",
        profiles={"stage1": stage1_profile.model_name, "stage2": stage2_profile.model_name},
    )
    try:
        run.stage1 = stage1_generate(input, stage1_profile, client, catalog)
        if run.stage1.digest:
            run.completion_digests.append(run.stage1.digest)
        run.screenplay = stage2_convert(
            run.stage1.novel,
            input,
            stage2_profile,
            client,
            catalog,
            dialect=dialect,
            lexicon=lexicon,
            validation_config=validation_config,
        )
        run.completion_digests.append(run.screenplay.digest)
    except Exception as exc:
        run.state = "failed"
        run.error = f"{type(exc).__name__}: {exc}"
        if runs_dir:
            persist_run(run, runs_dir)
        raise
    if runs_dir:
        persist_run(run, runs_dir)
    return run


def run_end_to_end(
    input: StructuredInput,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    runs_dir: str | None = None,
    dialect: DialectConfig = DEFAULT_DIALECT,
    lexicon: list[str] | None = None,
    validation_config: ValidationConfig | None = None,
) -> GenerationRun:
    """Single-call baseline: brief straight to screenplay, no stage-1 state."""
    run = GenerationRun(
        run_id=_derived_run_id(input, "end_to_end", profile.model_name),
        input=input,
        pipeline="end_to_end",
        profiles={"generate": profile.model_name},
    )
    try:
        run.screenplay = end_to_end_generate(
            input, profile, client, catalog,
            dialect=dialect, lexicon=lexicon, validation_config=validation_config,
        )
        run.completion_digests.append(run.screenplay.digest)
    except Exception as exc:
        run.state = "failed"
        run.error = f"{type(exc).__name__}: {exc}"
        if runs_dir:
            persist_run(run, runs_dir)
        raise
    if runs_dir:
        persist_run(run, runs_dir)
    return run

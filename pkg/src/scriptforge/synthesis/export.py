"""SFT export: serialize approved pairs into prompt/target JSONL rows.

Each row carries the rendered generation prompt, the tagged target text,
and a mask_boundary character offset marking where the target begins in
the concatenated (prompt + target) sequence. Targets are ordered
directives-then-prose; the CoT toggle controls only whether the
directives block is emitted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..backend import TemplateCatalog, default_catalog, render_prompt
from ..errors import ModeMismatch, UnapprovedPair
from .alignment import check_alignment
from .blocks import (
    extract_block,
    novel_from_text,
    parse_directives_body,
    parse_input,
    serialize_directives,
    serialize_input,
    serialize_novel,
)
from .types import FilterState, NarrativeDirectives, Novel, StructuredInput, SynthesisMode, TrainingPair

EXPORTABLE_STATES = {FilterState.APPROVED, FilterState.EDITED}

_PIPELINE_TEMPLATES = {
    "dsr": "stage1_novel_generation",
    "end_to_end": "end_to_end_generation",
}


@dataclass
class ExportManifest:
    path: str
    rows: int
    mode: str
    include_cot: bool
    pipeline: str
    state_counts: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "rows": self.rows,
            "mode": self.mode,
            "include_cot": self.include_cot,
            "pipeline": self.pipeline,
            "state_counts": dict(self.state_counts),
        }


def build_export_row(
    pair: TrainingPair,
    include_cot: bool,
    pipeline: str,
    catalog: TemplateCatalog,
    screenplay_text: Optional[str] = None,
) -> dict:
    prompt = render_prompt(
        catalog[_PIPELINE_TEMPLATES[pipeline]],
        {"structured_input": serialize_input(pair.input)},
    )
    blocks: list[str] = []
    if include_cot:
        blocks.append(serialize_directives(pair.directives))
    if pipeline == "dsr":
        blocks.append(serialize_novel(pair.novel))
    else:
        if screenplay_text is None:
            raise ValueError("end_to_end export requires screenplay text for each pair")
        blocks.append(f"<screenplay>\n{screenplay_text}\n</screenplay>")
    target = "\n".join(blocks)
    return {
        "prompt": prompt,
        "target": target,
        "mask_boundary": len(prompt),
        "provenance": {
            "pair_id": pair.pair_id,
            "synthesis_mode": pair.synthesis_mode.value,
            "source_scene_ids": list(pair.source_scene_ids),
            "include_cot": include_cot,
            "pipeline": pipeline,
        },
    }


def export_sft(
    pairs: list[TrainingPair],
    mode: SynthesisMode,
    include_cot: bool,
    pipeline: str,
    path: str,
    catalog: TemplateCatalog | None = None,
    scene_text_lookup: Callable[[TrainingPair], str] | None = None,
) -> ExportManifest:
    if pipeline not in _PIPELINE_TEMPLATES:
        raise ValueError(f"unknown pipeline: {pipeline!r}")
    catalog = catalog or default_catalog()
    state_counts: dict[str, int] = {}
    rows: list[dict] = []
    for pair in pairs:
        if pair.filter_state not in EXPORTABLE_STATES:
            raise UnapprovedPair(
                f"pair {pair.pair_id} is {pair.filter_state.value}, not exportable"
            )
        if pair.synthesis_mode is not mode:
            raise ModeMismatch(
                f"pair {pair.pair_id} is {pair.synthesis_mode.value}, export mode is {mode.value}"
            )
        # grounding closure: no approved pair may carry hard alignment violations
        report = check_alignment(pair.input, pair.novel)
        if report.hard_violations():
            raise UnapprovedPair(
                f"pair {pair.pair_id} carries unresolved alignment violations"
            )
        screenplay_text = scene_text_lookup(pair) if scene_text_lookup else None
        rows.append(build_export_row(pair, include_cot, pipeline, catalog, screenplay_text))
        state_counts[pair.filter_state.value] = state_counts.get(pair.filter_state.value, 0) + 1

    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    manifest = ExportManifest(
        path=path,
        rows=len(rows),
        mode=mode.value,
        include_cot=include_cot,
        pipeline=pipeline,
        state_counts=state_counts,
    )
    with open(path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, indent=2, ensure_ascii=False)
    return manifest


@dataclass
class ParsedExportRow:
    input: StructuredInput
    directives: Optional[NarrativeDirectives]
    novel: Optional[Novel]
    screenplay_text: Optional[str]
    mask_boundary: int
    provenance: dict


def parse_export_row(row: dict) -> ParsedExportRow:
    """Reconstruct the structured components of one exported row."""
    x = parse_input(row["prompt"])
    target = row["target"]
    directives_body = extract_block("directives", target)
    directives = parse_directives_body(directives_body) if directives_body is not None else None
    novel_body = extract_block("novel", target)
    novel = novel_from_text(novel_body) if novel_body is not None else None
    screenplay_text = extract_block("screenplay", target)
    return ParsedExportRow(
        input=x,
        directives=directives,
        novel=novel,
        screenplay_text=screenplay_text,
        mask_boundary=row["mask_boundary"],
        provenance=row["provenance"],
    )

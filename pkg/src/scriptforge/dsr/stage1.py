"""Stage 1: brief-to-novel expansion with a leading analysis block."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..backend import BackendProfile, CompletionClient, TemplateCatalog, default_catalog, render_prompt
from ..errors import UnparseableStage1
from ..synthesis.blocks import (
    extract_block,
    novel_from_text,
    parse_directives_body,
    serialize_input,
    serialize_stage1,
)
from ..synthesis.types import NarrativeDirectives, Novel, StructuredInput

FORMAT_REMINDER = (
    "\n\nReminder: respond with exactly one <directives>...</directives> block "
    "containing the four labeled lines, followed by one <novel>...</novel> block."
)


@dataclass
class Stage1Output:
    directives: NarrativeDirectives
    novel: Novel
    raw_text: str
    parse_diagnostics: list[str] = field(default_factory=list)
    digest: str | None = None

    def to_dict(self) -> dict:
        return {
            "directives": self.directives.to_dict(),
            "novel": self.novel.to_dict(),
            "raw_text": self.raw_text,
            "parse_diagnostics": list(self.parse_diagnostics),
            "digest": self.digest,
        }


def parse_stage1_output(text: str) -> Stage1Output:
    """Extract the directives and novel blocks, with recovery heuristics
    recorded in parse_diagnostics."""
    if not text.strip():
        raise UnparseableStage1("empty stage-1 output")
    diagnostics: list[str] = []

    directives_body = extract_block("directives", text)
    if directives_body is None and "<directives>" in text:
        # unclosed directives block: take up to the novel open tag or end
        m = re.search(r"<directives>\n?(.*?)(?=<novel>|\Z)", text, re.DOTALL)
        if m:
            directives_body = m.group(1).rstrip().removesuffix("</directives>").rstrip()
            diagnostics.append("unclosed_directives")

    novel_body = extract_block("novel", text)
    if novel_body is None and "<novel>" in text:
        m = re.search(r"<novel>\n?(.*?)\Z", text, re.DOTALL)
        if m:
            novel_body = m.group(1).rstrip().removesuffix("</novel>").rstrip()
            diagnostics.append("unclosed_novel")
    if novel_body is None and directives_body is not None:
        # untagged trailing prose after a closed directives block
        m = re.search(r"</directives>\n?(.*)\Z", text, re.DOTALL)
        if m and m.group(1).strip():
            novel_body = m.group(1).strip()
            diagnostics.append("untagged_novel")

    if directives_body is None and novel_body is None:
        raise UnparseableStage1("neither directives nor novel block recoverable")
    if directives_body is None:
        directives_body = ""
        diagnostics.append("missing_directives")
    if novel_body is None or not novel_body.strip():
        raise UnparseableStage1("no novel text recoverable")

    return Stage1Output(
        directives=parse_directives_body(directives_body),
        novel=novel_from_text(novel_body),
        raw_text=text,
        parse_diagnostics=diagnostics,
    )


def serialize_stage1_output(out: Stage1Output) -> str:
    return serialize_stage1(out.directives, out.novel)


def stage1_generate(
    input: StructuredInput,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
) -> Stage1Output:
    """Render the stage-1 generation prompt, call the backend, and parse.
    One retry with a format reminder on unparseable output."""
    catalog = catalog or default_catalog()
    prompt = render_prompt(
        catalog["stage1_novel_generation"], {"structured_input": serialize_input(input)}
    )
    text = client.complete(profile, prompt)
    try:
        out = parse_stage1_output(text)
        out.digest = profile.digest_for(prompt)
        return out
    except UnparseableStage1:
        retry_prompt = prompt + FORMAT_REMINDER
        text = client.complete(profile, retry_prompt)
        out = parse_stage1_output(text)
        out.digest = profile.digest_for(retry_prompt)
        out.parse_diagnostics.append("format_retry")
        return out

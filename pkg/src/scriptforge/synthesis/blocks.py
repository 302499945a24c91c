"""Tagged block serialization for briefs, directives, and novels.

This is the machine-parseable text format used in prompts, Stage-1 model
output, and SFT export rows. Serialization and parsing are exact inverses
for well-formed content (field text must not itself open a line with one
of the reserved labels or tags).
"""
from __future__ import annotations

import re

from .types import (
    CharacterProfile,
    DIRECTIVE_FIELDS,
    NarrativeDirectives,
    Novel,
    StructuredInput,
)

DIRECTIVE_LABELS = {
    "exposition_strategy": "Exposition Strategy",
    "narrative_pacing": "Narrative Pacing",
    "character_action": "Character Action",
    "character_emotion": "Character Emotion",
}
_LABEL_TO_FIELD = {v: k for k, v in DIRECTIVE_LABELS.items()}


def _block(tag: str, body: str) -> str:
    return f"<{tag}>\n{body}\n</{tag}>"


def _extract(tag: str, text: str) -> str | None:
    m = re.search(rf"<{tag}>\n?(.*?)\n?</{tag}>", text, re.DOTALL)
    return m.group(1) if m else None


# --- directives ---

def serialize_directives(d: NarrativeDirectives) -> str:
    lines = [f"{DIRECTIVE_LABELS[f]}: {getattr(d, f)}" for f in DIRECTIVE_FIELDS]
    return _block("directives", "\n".join(lines))


def parse_directives_body(body: str) -> NarrativeDirectives:
    fields: dict[str, list[str]] = {}
    current: str | None = None
    for line in body.split("\n"):
        m = re.match(r"^(Exposition Strategy|Narrative Pacing|Character Action|Character Emotion): ?(.*)$", line)
        if m:
            current = _LABEL_TO_FIELD[m.group(1)]
            fields[current] = [m.group(2)]
        elif current is not None:
            fields[current].append(line)
    return NarrativeDirectives(
        **{f: "\n".join(fields.get(f, [])).strip() for f in DIRECTIVE_FIELDS}
    )


# --- novel ---

def serialize_novel(n: Novel) -> str:
    return _block("novel", n.text())


def novel_from_text(text: str) -> Novel:
    paragraphs = [p.strip() for p in re.split(r"\n\s*\n", text) if p.strip()]
    return Novel(paragraphs=paragraphs)


# --- structured input ---

def serialize_input(x: StructuredInput) -> str:
    parts = [_block("outline", x.outline)]
    parts.append(_block("previous_context", x.previous_context))
    chars = []
    for c in x.character_profiles:
        body = (
            f"name: {c.name}\n"
            f"background: {c.background}\n"
            f"personality: {c.personality}\n"
            f"relationships: {c.relationships}"
        )
        chars.append(_block("character", body))
    parts.append(_block("characters", "\n".join(chars)))
    parts.append(_block("metadata", "\n".join(f"- {m}" for m in x.metadata)))
    return _block("input", "\n".join(parts))


_CHAR_FIELD_RE = re.compile(r"^(name|background|personality|relationships): ?(.*)$")


def _parse_character(body: str) -> CharacterProfile:
    fields: dict[str, list[str]] = {}
    current: str | None = None
    for line in body.split("\n"):
        m = _CHAR_FIELD_RE.match(line)
        if m:
            current = m.group(1)
            fields[current] = [m.group(2)]
        elif current is not None:
            fields[current].append(line)
    return CharacterProfile(
        name="\n".join(fields.get("name", [""])).strip(),
        background="\n".join(fields.get("background", [])).strip(),
        personality="\n".join(fields.get("personality", [])).strip(),
        relationships="\n".join(fields.get("relationships", [])).strip(),
    )


def parse_input(text: str) -> StructuredInput:
    inner = _extract("input", text)
    if inner is None:
        raise ValueError("no <input> block found")
    outline = _extract("outline", inner) or ""
    previous_context = _extract("previous_context", inner) or ""
    chars_body = _extract("characters", inner) or ""
    profiles = [
        _parse_character(m.group(1))
        for m in re.finditer(r"<character>\n?(.*?)\n?</character>", chars_body, re.DOTALL)
    ]
    metadata_body = _extract("metadata", inner) or ""
    metadata = [
        line[2:] for line in metadata_body.split("\n") if line.startswith("- ")
    ]
    return StructuredInput(
        outline=outline,
        previous_context=previous_context,
        character_profiles=profiles,
        metadata=metadata,
    )


# --- combined Stage-1 target ---

def serialize_stage1(directives: NarrativeDirectives, novel: Novel) -> str:
    return serialize_directives(directives) + "\n" + serialize_novel(novel)


def extract_block(tag: str, text: str) -> str | None:
    return _extract(tag, text)

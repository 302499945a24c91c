"""Forward distillation into novels, the reverse-only ablation conversion,
and the interiority lint."""
from __future__ import annotations

import os
import re

from ..backend import BackendProfile, CompletionClient, TemplateCatalog, default_catalog, render_prompt
from ..corpus import Scene, serialize_scene
from ..errors import DegenerateNovel, EmptyResponse
from .blocks import serialize_directives, serialize_input, novel_from_text
from .reverse import Synthesized
from .types import InteriorityFlag, NarrativeDirectives, Novel, StructuredInput

LEXICON_DIR = os.path.join(os.path.dirname(__file__), "..", "assets", "lexicons")

DEFAULT_MIN_PARAGRAPHS = 2


def load_lexicon(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def default_lexicon(language: str = "en") -> list[str]:
    return load_lexicon(os.path.join(LEXICON_DIR, f"interiority_{language}.txt"))


def lint_interiority(novel: Novel, lexicon: list[str]) -> list[InteriorityFlag]:
    """Flag spans matching interiority markers. Advisory only."""
    if not lexicon:
        raise ValueError("lexicon must be non-empty")
    flags: list[InteriorityFlag] = []
    patterns = []
    for marker in lexicon:
        if marker.isascii():
            patterns.append((marker, re.compile(rf"\b{re.escape(marker)}\b", re.IGNORECASE)))
        else:
            patterns.append((marker, re.compile(re.escape(marker))))
    for idx, paragraph in enumerate(novel.paragraphs):
        for marker, pattern in patterns:
            for m in pattern.finditer(paragraph):
                flags.append(
                    InteriorityFlag(paragraph_index=idx, span=m.group(0), matched_marker=marker)
                )
    return flags


def _to_novel(text: str, lexicon: list[str] | None, min_paragraphs: int) -> Novel:
    if not text.strip():
        raise EmptyResponse("backend returned empty novel text")
    novel = novel_from_text(text)
    if len(novel.paragraphs) < min_paragraphs:
        raise DegenerateNovel(
            f"{len(novel.paragraphs)} paragraphs, below minimum {min_paragraphs}"
        )
    if lexicon:
        novel.interiority_flags = lint_interiority(novel, lexicon)
    return novel


def forward_novelize(
    input: StructuredInput,
    directives: NarrativeDirectives,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    lexicon: list[str] | None = None,
    min_paragraphs: int = DEFAULT_MIN_PARAGRAPHS,
) -> Synthesized[Novel]:
    """Teacher-model expansion of the brief, conditioned on both the
    structured input and the narrative directives."""
    if not directives.is_complete():
        raise ValueError(f"directives incomplete: {directives.missing_fields()}")
    catalog = catalog or default_catalog()
    prompt = render_prompt(
        catalog["forward_novel"],
        {
            "structured_input": serialize_input(input),
            "directives": serialize_directives(directives),
        },
    )
    text = client.complete(profile, prompt)
    novel = _to_novel(text, lexicon, min_paragraphs)
    return Synthesized(value=novel, digests=[profile.digest_for(prompt)])


def reverse_novelize(
    screenplay: Scene,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    lexicon: list[str] | None = None,
    min_paragraphs: int = DEFAULT_MIN_PARAGRAPHS,
) -> Synthesized[Novel]:
    """Screenplay-to-novel conversion for the reverse-only ablation."""
    catalog = catalog or default_catalog()
    prompt = render_prompt(catalog["reverse_novel"], {"screenplay": serialize_scene(screenplay)})
    text = client.complete(profile, prompt)
    novel = _to_novel(text, lexicon, min_paragraphs)
    return Synthesized(value=novel, digests=[profile.digest_for(prompt)])

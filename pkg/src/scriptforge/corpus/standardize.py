"""Format standardization: canonical names and whitespace normalization."""
from __future__ import annotations

import re

from .types import Action, DialectConfig, Dialogue, Heading, Scene, Transition

_WS = re.compile(r"\s+")


def normalize_whitespace(text: str) -> str:
    """Collapse runs of whitespace to single spaces, preserving line breaks."""
    lines = [_WS.sub(" ", line).strip() for line in text.split("\n")]
    return "\n".join(l for l in lines if l) or ""


def standardize(
    scene: Scene,
    dialect: DialectConfig,
    diagnostics: list[str] | None = None,
) -> Scene:
    """Return a copy with alias-resolved names and normalized whitespace.

    Unknown character names pass through unchanged; when a diagnostics
    list is supplied they are noted there.
    """
    aliases = dialect.alias_lookup()
    canonical = set(dialect.name_alias_map)
    elements = []
    for el in scene.elements:
        if isinstance(el, Dialogue):
            name = normalize_whitespace(el.character)
            if name in aliases:
                name = aliases[name]
            elif name not in canonical and diagnostics is not None:
                diagnostics.append(f"unknown character name: {name}")
            elements.append(
                Dialogue(
                    character=name,
                    lines=[normalize_whitespace(l) for l in el.lines],
                    parenthetical=(
                        normalize_whitespace(el.parenthetical)
                        if el.parenthetical is not None
                        else None
                    ),
                )
            )
        elif isinstance(el, Action):
            elements.append(Action(text=normalize_whitespace(el.text), flagged=el.flagged))
        elif isinstance(el, Transition):
            elements.append(Transition(text=normalize_whitespace(el.text)))
    heading = Heading(
        setting=normalize_whitespace(scene.heading.setting),
        time_of_day=(
            normalize_whitespace(scene.heading.time_of_day)
            if scene.heading.time_of_day
            else scene.heading.time_of_day
        ),
        interior_exterior=scene.heading.interior_exterior,
    )
    return Scene(
        scene_id=scene.scene_id,
        series_id=scene.series_id,
        episode_no=scene.episode_no,
        scene_index=scene.scene_index,
        heading=heading,
        elements=elements,
        source_hash=scene.source_hash,
    )

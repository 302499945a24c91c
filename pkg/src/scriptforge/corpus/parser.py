"""Screenplay text parsing and canonical serialization.

Line grammar: a scene starts at a line beginning with a configured heading
marker. Inside a scene, a line matching a transition marker is a Transition,
a short unpunctuated line immediately followed by a non-blank line opens a
Dialogue block (optional parenthetical, then dialogue lines until a blank
line), and everything else is Action. Contiguous action lines form one
Action element. No non-whitespace input character is ever discarded.
"""
from __future__ import annotations

from .types import (
    Action,
    DEFAULT_DIALECT,
    DialectConfig,
    Dialogue,
    Heading,
    InteriorExterior,
    Scene,
    Transition,
    content_hash,
)
from ..errors import EmptyInput, NoScenes

_TERMINAL_PUNCT = ".!?…;,:。！？，；："


def _match_marker(line: str, markers: list[str]) -> str | None:
    for marker in sorted(markers, key=len, reverse=True):
        if line.startswith(marker):
            return marker
    return None


def _parse_heading(line: str, dialect: DialectConfig) -> Heading:
    marker = _match_marker(line, dialect.heading_markers)
    assert marker is not None
    rest = line[len(marker):].strip()
    upper = marker.upper()
    if "INT" in upper and "EXT" in upper:
        int_ext = InteriorExterior.MIXED
    elif "INT" in upper:
        int_ext = InteriorExterior.INTERIOR
    elif "EXT" in upper:
        int_ext = InteriorExterior.EXTERIOR
    else:
        int_ext = InteriorExterior.UNSPECIFIED
    setting, time_of_day = rest, None
    if " - " in rest:
        setting, _, time_of_day = rest.rpartition(" - ")
    return Heading(setting=setting, time_of_day=time_of_day, interior_exterior=int_ext)


def _is_cue(stripped: str, next_stripped: str | None, dialect: DialectConfig) -> bool:
    if not stripped or next_stripped is None or not next_stripped:
        return False
    if len(stripped) > dialect.cue_max_length:
        return False
    if stripped[-1] in _TERMINAL_PUNCT:
        return False
    if _match_marker(stripped, dialect.heading_markers):
        return False
    if _match_marker(stripped, dialect.transition_markers):
        return False
    return True


def _parse_elements(lines: list[str], dialect: DialectConfig) -> list:
    elements: list = []
    action_run: list[str] = []

    def flush_action():
        if action_run:
            elements.append(Action(text="\n".join(action_run)))
            action_run.clear()

    i = 0
    n = len(lines)
    while i < n:
        stripped = lines[i].strip()
        if not stripped:
            flush_action()
            i += 1
            continue
        if _match_marker(stripped, dialect.transition_markers):
            flush_action()
            elements.append(Transition(text=stripped))
            i += 1
            continue
        nxt = lines[i + 1].strip() if i + 1 < n else None
        if _is_cue(stripped, nxt, dialect):
            flush_action()
            character = stripped
            i += 1
            parenthetical = None
            if i < n:
                cand = lines[i].strip()
                if cand.startswith("(") and cand.endswith(")") and len(cand) > 2:
                    parenthetical = cand[1:-1]
                    i += 1
            dlg_lines: list[str] = []
            while i < n and lines[i].strip():
                dlg_lines.append(lines[i].strip())
                i += 1
            if dlg_lines:
                elements.append(
                    Dialogue(character=character, lines=dlg_lines, parenthetical=parenthetical)
                )
            else:
                # parenthetical with no speech: keep everything as action
                elements.append(Action(text=character, flagged=True))
                if parenthetical is not None:
                    elements.append(Action(text=f"({parenthetical})", flagged=True))
            continue
        action_run.append(stripped)
        i += 1
    flush_action()
    return elements


def parse_screenplay(
    raw: str,
    dialect: DialectConfig = DEFAULT_DIALECT,
    series_id: str = "",
    episode_no: int = 0,
) -> list[Scene]:
    if not raw or not raw.strip():
        raise EmptyInput("screenplay text has no non-whitespace content")

    lines = raw.splitlines()
    heading_idx = [
        i for i, line in enumerate(lines)
        if _match_marker(line.strip(), dialect.heading_markers)
    ]
    if not heading_idx:
        candidates = [l.strip() for l in lines if l.strip()][:3]
        raise NoScenes(candidates)

    scenes: list[Scene] = []
    preamble = lines[: heading_idx[0]]
    bounds = list(zip(heading_idx, heading_idx[1:] + [len(lines)]))
    for index, (start, end) in enumerate(bounds):
        heading = _parse_heading(lines[start].strip(), dialect)
        body = lines[start + 1 : end]
        elements = _parse_elements(body, dialect)
        if index == 0 and any(l.strip() for l in preamble):
            # text before the first heading: retained, flagged for review
            pre = [l.strip() for l in preamble if l.strip()]
            elements.insert(0, Action(text="\n".join(pre), flagged=True))
        span = "\n".join(lines[start:end])
        digest = content_hash(span)
        scenes.append(
            Scene(
                scene_id=f"{series_id or 'anon'}:{episode_no}:{index}:{digest[:12]}",
                series_id=series_id,
                episode_no=episode_no,
                scene_index=index,
                heading=heading,
                elements=elements,
                source_hash=digest,
            )
        )
    return scenes


def serialize_scene(scene: Scene) -> str:
    """Canonical plain-text form; parse(serialize(s)) is structurally s."""
    chunks: list[str] = [scene.heading.to_line()]
    for el in scene.elements:
        if isinstance(el, Action):
            chunks.append(el.text)
        elif isinstance(el, Transition):
            chunks.append(el.text)
        elif isinstance(el, Dialogue):
            block = [el.character]
            if el.parenthetical is not None:
                block.append(f"({el.parenthetical})")
            block.extend(el.lines)
            chunks.append("\n".join(block))
    return "\n\n".join(chunks) + "\n"


def serialize_scenes(scenes: list[Scene]) -> str:
    return "\n".join(serialize_scene(s) for s in scenes)


def nonspace_char_count(text: str) -> int:
    return sum(1 for ch in text if not ch.isspace())


def partition_holds(raw: str, scenes: list[Scene]) -> bool:
    """No-silent-loss check: every non-whitespace character of the raw
    input is accounted for in the parsed scenes (headings + elements);
    only whitespace may be discarded."""
    return nonspace_char_count(raw) == nonspace_char_count(serialize_scenes(scenes))

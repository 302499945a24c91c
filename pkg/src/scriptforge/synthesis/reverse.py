"""Reverse synthesis: deconstruct existing scenes into briefs and directives."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Generic, TypeVar

from ..backend import BackendProfile, CompletionClient, TemplateCatalog, default_catalog, render_prompt
from ..corpus import Scene, serialize_scene, serialize_scenes
from ..errors import EmptyResponse, NoSpeakers, PartialDirectives
from .types import CharacterProfile, NarrativeDirectives

T = TypeVar("T")

SERIES_OPENING = "series opening"


@dataclass
class Synthesized(Generic[T]):
    value: T
    digests: list[str] = field(default_factory=list)


def _call(
    client: CompletionClient,
    profile: BackendProfile,
    catalog: TemplateCatalog,
    template_name: str,
    bindings: dict[str, str],
) -> tuple[str, str]:
    prompt = render_prompt(catalog[template_name], bindings)
    text = client.complete(profile, prompt)
    if not text.strip():
        raise EmptyResponse(f"backend returned empty text for {template_name}")
    return text.strip(), profile.digest_for(prompt)


def reverse_outline(
    scenes: list[Scene],
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
) -> Synthesized[str]:
    if not scenes:
        raise ValueError("scenes must be non-empty")
    catalog = catalog or default_catalog()
    text, digest = _call(
        client, profile, catalog, "reverse_scene_outline",
        {"screenplay": serialize_scenes(scenes)},
    )
    return Synthesized(value=text, digests=[digest])


def reverse_previous_context(
    prior_scenes: list[Scene],
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
) -> Synthesized[str]:
    if not prior_scenes:
        return Synthesized(value=SERIES_OPENING, digests=[])
    catalog = catalog or default_catalog()
    text, digest = _call(
        client, profile, catalog, "reverse_previous_context",
        {"prior_scenes": serialize_scenes(prior_scenes)},
    )
    return Synthesized(value=text, digests=[digest])


_PROFILE_FIELD_RE = re.compile(r"^(background|personality|relationships): ?(.*)$", re.MULTILINE)


def _parse_profile(name: str, text: str) -> CharacterProfile:
    fields = {m.group(1): m.group(2).strip() for m in _PROFILE_FIELD_RE.finditer(text)}
    if not fields:
        fields = {"background": text.strip()}
    return CharacterProfile(
        name=name,
        background=fields.get("background", ""),
        personality=fields.get("personality", ""),
        relationships=fields.get("relationships", ""),
    )


def reverse_character_profiles(
    scenes: list[Scene],
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
) -> Synthesized[list[CharacterProfile]]:
    speakers: list[str] = []
    for scene in scenes:
        for name in scene.speakers():
            if name not in speakers:
                speakers.append(name)
    if not speakers:
        raise NoSpeakers("no dialogue elements in the provided scenes")
    catalog = catalog or default_catalog()
    screenplay = serialize_scenes(scenes)
    profiles: list[CharacterProfile] = []
    digests: list[str] = []
    for name in speakers:
        text, digest = _call(
            client, profile, catalog, "reverse_character_profiles",
            {"screenplay": screenplay, "character_name": name},
        )
        profiles.append(_parse_profile(name, text))
        digests.append(digest)
    return Synthesized(value=profiles, digests=digests)


_ACTION_EMOTION_RE = re.compile(r"^(Action|Emotion): ?(.*)$", re.MULTILINE)


def extract_directives(
    scene: Scene,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
) -> Synthesized[NarrativeDirectives]:
    """Populate all four directive fields from the three analysis templates.

    The action/emotion template carries two labeled lines covering two
    fields. Any failed template call surfaces as PartialDirectives naming
    exactly the fields that remain empty, so callers can retry per field.
    """
    catalog = catalog or default_catalog()
    screenplay = serialize_scene(scene)
    directives = NarrativeDirectives()
    digests: list[str] = []
    failures: list[str] = []

    for template_name, fields in (
        ("cot_exposition_strategy", ("exposition_strategy",)),
        ("cot_narrative_pacing", ("narrative_pacing",)),
        ("cot_character_action_emotion", ("character_action", "character_emotion")),
    ):
        try:
            text, digest = _call(client, profile, catalog, template_name, {"screenplay": screenplay})
        except Exception:
            failures.extend(fields)
            continue
        digests.append(digest)
        if len(fields) == 1:
            setattr(directives, fields[0], text)
        else:
            parts = {m.group(1): m.group(2).strip() for m in _ACTION_EMOTION_RE.finditer(text)}
            action = parts.get("Action", "")
            emotion = parts.get("Emotion", "")
            if not action or not emotion:
                failures.extend(f for f, v in zip(fields, (action, emotion)) if not v)
            directives.character_action = action
            directives.character_emotion = emotion

    if failures:
        raise PartialDirectives(failures)
    return Synthesized(value=directives, digests=digests)

"""Stage 2 format conversion and the single-call end-to-end baseline.

Stage 2 is inference-only and sees nothing from Stage 1 except the novel
text and the original brief; that interface shape is the decoupling
contract."""
from __future__ import annotations

from dataclasses import dataclass

from ..backend import BackendProfile, CompletionClient, TemplateCatalog, default_catalog, render_prompt
from ..corpus import DEFAULT_DIALECT, DialectConfig, Scene, parse_screenplay
from ..errors import NoScenes, UnparseableScreenplay
from ..synthesis.blocks import serialize_input
from ..synthesis.types import Novel, StructuredInput
from .validate import ValidationConfig, ValidationReport, validate_screenplay


@dataclass
class ScreenplayResult:
    scene: Scene
    raw_text: str
    validation: ValidationReport
    digest: str


def _parse_single_scene(text: str, dialect: DialectConfig) -> Scene:
    try:
        scenes = parse_screenplay(text, dialect)
    except NoScenes as exc:
        raise UnparseableScreenplay(str(exc)) from exc
    return scenes[0]


def _convert_and_validate(
    prompt: str,
    profile: BackendProfile,
    client: CompletionClient,
    roster: list[str] | None,
    dialect: DialectConfig,
    lexicon: list[str] | None,
    config: ValidationConfig | None,
) -> ScreenplayResult:
    text = client.complete(profile, prompt)
    if not text.strip():
        raise UnparseableScreenplay("backend returned empty screenplay text")
    scene = _parse_single_scene(text, dialect)
    report = validate_screenplay(scene, roster=roster, lexicon=lexicon, config=config)
    return ScreenplayResult(
        scene=scene, raw_text=text, validation=report, digest=profile.digest_for(prompt)
    )


def stage2_convert(
    novel: Novel,
    input: StructuredInput,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    dialect: DialectConfig = DEFAULT_DIALECT,
    lexicon: list[str] | None = None,
    validation_config: ValidationConfig | None = None,
) -> ScreenplayResult:
    catalog = catalog or default_catalog()
    prompt = render_prompt(
        catalog["stage2_screenplay_conversion"],
        {"structured_input": serialize_input(input), "novel": novel.text()},
    )
    return _convert_and_validate(
        prompt, profile, client, input.roster(), dialect, lexicon, validation_config
    )


def end_to_end_generate(
    input: StructuredInput,
    profile: BackendProfile,
    client: CompletionClient,
    catalog: TemplateCatalog | None = None,
    dialect: DialectConfig = DEFAULT_DIALECT,
    lexicon: list[str] | None = None,
    validation_config: ValidationConfig | None = None,
) -> ScreenplayResult:
    catalog = catalog or default_catalog()
    prompt = render_prompt(
        catalog["end_to_end_generation"], {"structured_input": serialize_input(input)}
    )
    return _convert_and_validate(
        prompt, profile, client, input.roster(), dialect, lexicon, validation_config
    )

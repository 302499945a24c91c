"""Scene-level quality filtering with a closed set of drop reasons."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .types import Action, Dialogue, DropReason, FilterRuleSet, Scene, Transition


@dataclass(frozen=True)
class Verdict:
    keep: bool
    reason: Optional[DropReason] = None

    @classmethod
    def kept(cls) -> "Verdict":
        return cls(keep=True)

    @classmethod
    def dropped(cls, reason: DropReason) -> "Verdict":
        return cls(keep=False, reason=reason)


def _scene_lines(scene: Scene) -> list[str]:
    lines: list[str] = [scene.heading.to_line()]
    for el in scene.elements:
        if isinstance(el, Dialogue):
            lines.append(el.character)
            if el.parenthetical is not None:
                lines.append(el.parenthetical)
            lines.extend(el.lines)
        elif isinstance(el, (Action, Transition)):
            lines.extend(el.text.split("\n"))
    return [l for l in lines if l.strip()]


def noise_ratio(scene: Scene, patterns: list[str]) -> float:
    lines = _scene_lines(scene)
    if not lines or not patterns:
        return 0.0
    compiled = [re.compile(p) for p in patterns]
    noisy = sum(1 for line in lines if any(c.search(line) for c in compiled))
    return noisy / len(lines)


def filter_scene(scene: Scene, rules: FilterRuleSet) -> Verdict:
    """Deterministic keep/drop verdict. Check order: size, dialogue, noise."""
    if len(scene.elements) < rules.min_elements:
        return Verdict.dropped(DropReason.TOO_SHORT)
    total_chars = sum(len(l) for l in _scene_lines(scene))
    if total_chars > rules.max_chars:
        return Verdict.dropped(DropReason.TOO_LONG)
    if scene.dialogue_count() < rules.min_dialogue_blocks:
        return Verdict.dropped(DropReason.NO_DIALOGUE)
    if rules.noise_patterns:
        ratio = noise_ratio(scene, rules.noise_patterns)
        if ratio > rules.noise_ratio_threshold:
            return Verdict.dropped(DropReason.NOISY)
    return Verdict.kept()

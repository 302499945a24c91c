"""Structural screenplay validation: hard format checks and soft style checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..corpus import Action, Dialogue, Scene
from ..synthesis.forward import lint_interiority
from ..synthesis.types import Novel


@dataclass
class Check:
    check_id: str
    passed: bool
    hard: bool
    evidence: str = ""

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "passed": self.passed,
            "hard": self.hard,
            "evidence": self.evidence,
        }


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks if c.hard)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "overall": self.overall}


@dataclass
class ValidationConfig:
    max_action_line_chars: int = 240
    dialogue_ratio_band: tuple[float, float] = (0.1, 0.95)


def validate_screenplay(
    scene: Scene,
    roster: list[str] | None = None,
    lexicon: list[str] | None = None,
    config: ValidationConfig | None = None,
) -> ValidationReport:
    config = config or ValidationConfig()
    checks: list[Check] = []

    checks.append(
        Check(
            check_id="has_heading",
            passed=bool(scene.heading.setting.strip()),
            hard=True,
            evidence=scene.heading.to_line(),
        )
    )

    dialogue_count = scene.dialogue_count()
    checks.append(
        Check(
            check_id="has_dialogue",
            passed=dialogue_count >= 1,
            hard=True,
            evidence=f"{dialogue_count} dialogue blocks",
        )
    )

    if roster is not None:
        off_roster = [s for s in scene.speakers() if s not in roster]
        checks.append(
            Check(
                check_id="speakers_on_roster",
                passed=not off_roster,
                hard=True,
                evidence=", ".join(off_roster) if off_roster else "all speakers on roster",
            )
        )

    if lexicon:
        action_texts = [el.text for el in scene.elements if isinstance(el, Action)]
        hits = []
        if action_texts:
            hits = lint_interiority(Novel(paragraphs=action_texts), lexicon)
        checks.append(
            Check(
                check_id="no_interiority_in_action",
                passed=not hits,
                hard=True,
                evidence="; ".join(f"{h.span!r} ({h.matched_marker})" for h in hits[:5]),
            )
        )

    long_lines = [
        line
        for el in scene.elements
        if isinstance(el, Action)
        for line in el.text.split("\n")
        if len(line) > config.max_action_line_chars
    ]
    checks.append(
        Check(
            check_id="action_line_length",
            passed=not long_lines,
            hard=False,
            evidence=f"{len(long_lines)} lines over {config.max_action_line_chars} chars",
        )
    )

    if scene.elements:
        ratio = dialogue_count / len(scene.elements)
        lo, hi = config.dialogue_ratio_band
        checks.append(
            Check(
                check_id="dialogue_action_balance",
                passed=lo <= ratio <= hi,
                hard=False,
                evidence=f"dialogue ratio {ratio:.2f}, band [{lo}, {hi}]",
            )
        )

    return ValidationReport(checks=checks)

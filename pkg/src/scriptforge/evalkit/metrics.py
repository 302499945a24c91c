"""Score aggregation, variance, ratio-to-human, win rate, error tallies.

All arithmetic is full precision internally; rounding to two decimals
(half-up) happens only at report boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum
from typing import Optional

from ..errors import IncompleteSuite, NoRatings, NoScenesScored, OutOfRange, ZeroHuman
from .rubric import MAX_SCORE, MIN_SCORE


class ErrorCategory(str, Enum):
    PLOT_COHERENCE = "plot_coherence"
    CHARACTER_DEVELOPMENT = "character_development"
    NARRATIVE_PACING = "narrative_pacing"


@dataclass
class ErrorNote:
    category: ErrorCategory
    note: str = ""

    def to_dict(self) -> dict:
        return {"category": self.category.value, "note": self.note}

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorNote":
        return cls(category=ErrorCategory(d["category"]), note=d.get("note", ""))


@dataclass
class RatingRecord:
    script_ref: str
    rater_id: str
    score: int
    errors: list[ErrorNote] = field(default_factory=list)
    timestamp: float = 0.0

    def __post_init__(self):
        if not MIN_SCORE <= self.score <= MAX_SCORE:
            raise OutOfRange(f"score {self.score} outside [{MIN_SCORE}, {MAX_SCORE}]")

    def to_dict(self) -> dict:
        return {
            "script_ref": self.script_ref,
            "rater_id": self.rater_id,
            "score": self.score,
            "errors": [e.to_dict() for e in self.errors],
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RatingRecord":
        return cls(
            script_ref=d["script_ref"],
            rater_id=d["rater_id"],
            score=d["score"],
            errors=[ErrorNote.from_dict(e) for e in d.get("errors", [])],
            timestamp=d.get("timestamp", 0.0),
        )


@dataclass
class ComparisonRecord:
    session_id: str
    scene_id: str
    blinded_labels: list[str]
    label_map: dict[str, str]  # label -> system id; server-side only
    choice: str
    rater_id: str

    def __post_init__(self):
        if self.choice not in self.blinded_labels:
            raise ValueError(f"choice {self.choice!r} not among blinded labels")

    def chosen_system(self) -> str:
        return self.label_map[self.choice]


def round2(value: float) -> float:
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def scene_score(ratings: list[RatingRecord]) -> float:
    """Mean of all raters' scores for one script."""
    if not ratings:
        raise NoRatings("scene_score requires at least one rating")
    return sum(r.score for r in ratings) / len(ratings)


def system_stats(scene_means: list[float]) -> tuple[float, float]:
    """Mean and population variance over per-scene mean scores."""
    if not scene_means:
        raise NoScenesScored("system_stats requires at least one scene mean")
    mean = sum(scene_means) / len(scene_means)
    variance = sum((m - mean) ** 2 for m in scene_means) / len(scene_means)
    return mean, variance


def ratio_to_human(system_mean: float, human_mean: float) -> float:
    """System mean as a percentage of the human reference mean."""
    if human_mean <= 0:
        raise ZeroHuman("human reference mean must be positive")
    return round2(100.0 * system_mean / human_mean)


def improvement_delta(system_mean: float, baseline_mean: float) -> float:
    return round2(system_mean - baseline_mean)


def error_frequency(
    ratings: list[RatingRecord],
) -> tuple[dict[str, int], dict[str, float]]:
    """Per-category error counts and per-script rates."""
    counts = {c.value: 0 for c in ErrorCategory}
    for rating in ratings:
        for err in rating.errors:
            counts[err.category.value] += 1
    scripts = {r.script_ref for r in ratings}
    script_count = max(len(scripts), 1)
    rates = {k: v / script_count for k, v in counts.items()}
    return counts, rates


def win_rate(
    comparisons: list[ComparisonRecord],
    suite_scene_count: int,
    scene_scores: Optional[dict[tuple[str, str], float]] = None,
) -> dict[str, float]:
    """Per-system percentage of suite scenes won in blind head-to-heads.

    Rater choices are aggregated per scene by majority vote; ties break
    toward the higher scene mean when scene_scores is given, and any
    remaining tie is split fractionally among the tied systems.
    """
    systems: set[str] = set()
    by_scene: dict[str, list[ComparisonRecord]] = {}
    for comp in comparisons:
        by_scene.setdefault(comp.scene_id, []).append(comp)
        systems.update(comp.label_map.values())
    if len(by_scene) < suite_scene_count:
        raise IncompleteSuite(
            f"only {len(by_scene)} of {suite_scene_count} suite scenes have comparisons"
        )

    wins = {s: 0.0 for s in systems}
    for scene_id, comps in by_scene.items():
        votes: dict[str, int] = {}
        for comp in comps:
            chosen = comp.chosen_system()
            votes[chosen] = votes.get(chosen, 0) + 1
        top = max(votes.values())
        leaders = sorted(s for s, v in votes.items() if v == top)
        if len(leaders) > 1 and scene_scores is not None:
            best = max(scene_scores.get((scene_id, s), float("-inf")) for s in leaders)
            leaders = [
                s for s in leaders if scene_scores.get((scene_id, s), float("-inf")) == best
            ]
        share = 1.0 / len(leaders)
        for leader in leaders:
            wins[leader] += share

    return {s: round2(100.0 * w / suite_scene_count) for s, w in wins.items()}

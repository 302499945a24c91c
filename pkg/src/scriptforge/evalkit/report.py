"""Evaluation report assembly and rendering (JSON and aligned text table)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .metrics import (
    ComparisonRecord,
    ErrorCategory,
    RatingRecord,
    error_frequency,
    improvement_delta,
    ratio_to_human,
    round2,
    scene_score,
    system_stats,
    win_rate,
)


@dataclass
class SystemReport:
    system_id: str
    mean_score: float
    variance: float
    ratio_to_human_pct: Optional[float]
    win_rate_pct: Optional[float]
    error_counts: dict[str, int]
    error_rates: dict[str, float]
    improvement_over_baseline: Optional[float]
    scene_count: int

    def to_dict(self) -> dict:
        return {
            "system_id": self.system_id,
            "mean_score": round2(self.mean_score),
            "variance": round2(self.variance),
            "ratio_to_human_pct": self.ratio_to_human_pct,
            "win_rate_pct": self.win_rate_pct,
            "error_counts": dict(self.error_counts),
            "error_rates": {k: round2(v) for k, v in self.error_rates.items()},
            "improvement_over_baseline": self.improvement_over_baseline,
            "scene_count": self.scene_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SystemReport":
        return cls(**d)


@dataclass
class EvalReport:
    systems: dict[str, SystemReport] = field(default_factory=dict)
    human_system: Optional[str] = None
    baseline_system: Optional[str] = None
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "systems": {k: v.to_dict() for k, v in self.systems.items()},
            "human_system": self.human_system,
            "baseline_system": self.baseline_system,
            "complete": self.complete,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(
            systems={k: SystemReport.from_dict(v) for k, v in d["systems"].items()},
            human_system=d.get("human_system"),
            baseline_system=d.get("baseline_system"),
            complete=d.get("complete", True),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=True)

    def to_table(self) -> str:
        headers = ["System", "Expert Score", "Variance", "Ratio to Human %", "Win Rate %"]
        rows = []
        for system_id in sorted(self.systems):
            r = self.systems[system_id]
            rows.append(
                [
                    system_id,
                    f"{round2(r.mean_score):.2f}",
                    f"{round2(r.variance):.2f}",
                    "-" if r.ratio_to_human_pct is None else f"{r.ratio_to_human_pct:.2f}",
                    "-" if r.win_rate_pct is None else f"{r.win_rate_pct:.1f}",
                ]
            )
        widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
                  for i, h in enumerate(headers)]
        lines = [
            "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
            "  ".join("-" * w for w in widths),
        ]
        for row in rows:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        if not self.complete:
            lines.append("")
            lines.append("NOTE: session incomplete; figures are partial.")
        return "\n".join(lines)


def build_report(
    ratings_by_system: dict[str, list[list[RatingRecord]]],
    comparisons: list[ComparisonRecord] | None = None,
    suite_scene_count: int | None = None,
    human_system: str | None = None,
    baseline_system: str | None = None,
    complete: bool = True,
) -> EvalReport:
    """Assemble the full report.

    ratings_by_system maps system id to a list of per-scene rating lists
    (one inner list per scored scene).
    """
    means: dict[str, float] = {}
    variances: dict[str, float] = {}
    scene_counts: dict[str, int] = {}
    errors: dict[str, tuple[dict[str, int], dict[str, float]]] = {}
    for system_id, per_scene in ratings_by_system.items():
        scene_means = [scene_score(rs) for rs in per_scene]
        means[system_id], variances[system_id] = system_stats(scene_means)
        scene_counts[system_id] = len(per_scene)
        flat = [r for rs in per_scene for r in rs]
        errors[system_id] = error_frequency(flat)

    win_rates: dict[str, float] = {}
    if comparisons and suite_scene_count:
        scene_scores = {}
        for system_id, per_scene in ratings_by_system.items():
            for rs in per_scene:
                if rs:
                    scene_scores[(rs[0].script_ref, system_id)] = scene_score(rs)
        win_rates = win_rate(comparisons, suite_scene_count, scene_scores or None)

    human_mean = means.get(human_system) if human_system else None
    baseline_mean = means.get(baseline_system) if baseline_system else None

    report = EvalReport(
        human_system=human_system, baseline_system=baseline_system, complete=complete
    )
    for system_id, mean in means.items():
        counts, rates = errors[system_id]
        report.systems[system_id] = SystemReport(
            system_id=system_id,
            mean_score=mean,
            variance=variances[system_id],
            ratio_to_human_pct=(
                ratio_to_human(mean, human_mean)
                if human_mean and system_id != human_system
                else None
            ),
            win_rate_pct=win_rates.get(system_id),
            error_counts=counts,
            error_rates=rates,
            improvement_over_baseline=(
                improvement_delta(mean, baseline_mean)
                if baseline_mean is not None and system_id != baseline_system
                else None
            ),
            scene_count=scene_counts[system_id],
        )
    return report

"""Multi-stage filter state machine for training pairs.

pending_auto -> rejected | pending_human
pending_human -> approved | edited | rejected

The auto stage runs alignment, interiority, and length checks; only
hard failures reject. Human verdicts move pairs out of pending_human;
edits re-run the auto checks before the edited state is reachable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import EditFailsAutoChecks, IllegalTransition
from .alignment import check_alignment
from .forward import lint_interiority
from .types import AlignmentReport, FilterState, TrainingPair

_ALLOWED = {
    FilterState.PENDING_AUTO: {FilterState.REJECTED, FilterState.PENDING_HUMAN},
    FilterState.PENDING_HUMAN: {FilterState.APPROVED, FilterState.EDITED, FilterState.REJECTED},
    FilterState.APPROVED: set(),
    FilterState.EDITED: set(),
    FilterState.REJECTED: set(),
}


def advance(pair: TrainingPair, to_state: FilterState) -> None:
    if to_state not in _ALLOWED[pair.filter_state]:
        raise IllegalTransition(
            f"{pair.filter_state.value} -> {to_state.value} is not a legal move"
        )
    pair.filter_state = to_state


@dataclass
class AutoCheckConfig:
    lexicon: list[str] = field(default_factory=list)
    overlap_threshold: int = 1
    min_novel_chars: int = 1
    max_novel_chars: int = 200_000


@dataclass
class AutoCheckResult:
    alignment: AlignmentReport
    length_failure: str | None = None

    def hard_failures(self) -> list[str]:
        failures = [
            f"{v.kind.value}: {v.evidence_span}" for v in self.alignment.hard_violations()
        ]
        if self.length_failure:
            failures.append(self.length_failure)
        return failures


def run_auto_checks(pair: TrainingPair, config: AutoCheckConfig) -> AutoCheckResult:
    """Run the automated stage's checks without changing state."""
    report = check_alignment(pair.input, pair.novel, config.overlap_threshold)
    if config.lexicon:
        pair.novel.interiority_flags = lint_interiority(pair.novel, config.lexicon)
    length = len(pair.novel.text())
    length_failure = None
    if not config.min_novel_chars <= length <= config.max_novel_chars:
        length_failure = (
            f"novel length {length} outside "
            f"[{config.min_novel_chars}, {config.max_novel_chars}]"
        )
    return AutoCheckResult(alignment=report, length_failure=length_failure)


def run_multistage_filter(
    pair: TrainingPair, config: AutoCheckConfig | None = None
) -> TrainingPair:
    """Advance a pending_auto pair through the automated stage."""
    if pair.filter_state is not FilterState.PENDING_AUTO:
        raise IllegalTransition(
            f"auto stage requires pending_auto, pair is {pair.filter_state.value}"
        )
    result = run_auto_checks(pair, config or AutoCheckConfig())
    failures = result.hard_failures()
    if failures:
        advance(pair, FilterState.REJECTED)
        pair.rejection_reason = "; ".join(failures)
    else:
        advance(pair, FilterState.PENDING_HUMAN)
    return pair


def apply_human_verdict(
    pair: TrainingPair,
    verdict: str,
    reviewer_id: str,
    edit_payload: dict | None = None,
    reject_reason: str | None = None,
    config: AutoCheckConfig | None = None,
) -> TrainingPair:
    """Apply a human reviewer's verdict: approve, edit, or reject."""
    if verdict == "approve":
        advance(pair, FilterState.APPROVED)
    elif verdict == "reject":
        advance(pair, FilterState.REJECTED)
        pair.rejection_reason = reject_reason or f"rejected by {reviewer_id}"
    elif verdict == "edit":
        if pair.filter_state is not FilterState.PENDING_HUMAN:
            raise IllegalTransition(
                f"edit requires pending_human, pair is {pair.filter_state.value}"
            )
        if not edit_payload:
            raise ValueError("edit verdict requires a payload")
        candidate = TrainingPair.from_dict({**pair.to_dict(), **_edit_fields(edit_payload)})
        result = run_auto_checks(candidate, config or AutoCheckConfig())
        if result.hard_failures():
            raise EditFailsAutoChecks(result.alignment)
        pair.input = candidate.input
        pair.directives = candidate.directives
        pair.novel = candidate.novel
        pair.record_edit(reviewer_id, diff_summary=", ".join(sorted(edit_payload)))
        advance(pair, FilterState.EDITED)
    else:
        raise ValueError(f"unknown verdict: {verdict!r}")
    return pair


def _edit_fields(payload: dict) -> dict:
    allowed = {"input", "directives", "novel"}
    unknown = set(payload) - allowed
    if unknown:
        raise ValueError(f"edit payload may only change {sorted(allowed)}, got {sorted(unknown)}")
    return payload

"""Training-data domain types: creative brief, directives, novel, pairs."""
from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


@dataclass
class CharacterProfile:
    name: str
    background: str = ""
    personality: str = ""
    relationships: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "background": self.background,
            "personality": self.personality,
            "relationships": self.relationships,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CharacterProfile":
        return cls(**d)


@dataclass
class StructuredInput:
    """The creative brief: outline, previous context, character profiles,
    and free-form metadata directives."""

    outline: str
    previous_context: str = ""
    character_profiles: list[CharacterProfile] = field(default_factory=list)
    metadata: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.outline.strip():
            raise ValueError("outline must be non-empty")
        names = [c.name for c in self.character_profiles]
        if len(names) != len(set(names)):
            raise ValueError("character names must be unique")

    def roster(self) -> list[str]:
        return [c.name for c in self.character_profiles]

    def to_dict(self) -> dict:
        return {
            "outline": self.outline,
            "previous_context": self.previous_context,
            "character_profiles": [c.to_dict() for c in self.character_profiles],
            "metadata": list(self.metadata),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StructuredInput":
        return cls(
            outline=d["outline"],
            previous_context=d.get("previous_context", ""),
            character_profiles=[
                CharacterProfile.from_dict(c) for c in d.get("character_profiles", [])
            ],
            metadata=list(d.get("metadata", [])),
        )


DIRECTIVE_FIELDS = (
    "exposition_strategy",
    "narrative_pacing",
    "character_action",
    "character_emotion",
)


@dataclass
class NarrativeDirectives:
    """Four-dimension authorial strategy driving the prose expansion."""

    exposition_strategy: str = ""
    narrative_pacing: str = ""
    character_action: str = ""
    character_emotion: str = ""

    def missing_fields(self) -> list[str]:
        return [f for f in DIRECTIVE_FIELDS if not getattr(self, f).strip()]

    def is_complete(self) -> bool:
        return not self.missing_fields()

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in DIRECTIVE_FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "NarrativeDirectives":
        return cls(**{f: d.get(f, "") for f in DIRECTIVE_FIELDS})


@dataclass
class InteriorityFlag:
    paragraph_index: int
    span: str
    matched_marker: str

    def to_dict(self) -> dict:
        return {
            "paragraph_index": self.paragraph_index,
            "span": self.span,
            "matched_marker": self.matched_marker,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InteriorityFlag":
        return cls(**d)


@dataclass
class Novel:
    paragraphs: list[str]
    interiority_flags: list[InteriorityFlag] = field(default_factory=list)

    def __post_init__(self):
        if not self.paragraphs:
            raise ValueError("paragraphs must be non-empty")
        for flag in self.interiority_flags:
            if not 0 <= flag.paragraph_index < len(self.paragraphs):
                raise ValueError("interiority flag references invalid paragraph index")

    def text(self) -> str:
        return "\n\n".join(self.paragraphs)

    def to_dict(self) -> dict:
        return {
            "paragraphs": list(self.paragraphs),
            "interiority_flags": [f.to_dict() for f in self.interiority_flags],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Novel":
        return cls(
            paragraphs=list(d["paragraphs"]),
            interiority_flags=[
                InteriorityFlag.from_dict(f) for f in d.get("interiority_flags", [])
            ],
        )


class SynthesisMode(str, Enum):
    HYBRID = "hybrid"
    REVERSE_ONLY = "reverse_only"


class FilterState(str, Enum):
    PENDING_AUTO = "pending_auto"
    PENDING_HUMAN = "pending_human"
    APPROVED = "approved"
    EDITED = "edited"
    REJECTED = "rejected"


class ViolationKind(str, Enum):
    UNGROUNDED_NAME = "ungrounded_name"
    UNGROUNDED_PROP = "ungrounded_prop"
    MISSING_OUTLINE_BEAT = "missing_outline_beat"


class Severity(str, Enum):
    HARD = "hard"
    SOFT = "soft"


@dataclass
class Violation:
    kind: ViolationKind
    evidence_span: str
    severity: Severity

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "evidence_span": self.evidence_span,
            "severity": self.severity.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Violation":
        return cls(
            kind=ViolationKind(d["kind"]),
            evidence_span=d["evidence_span"],
            severity=Severity(d["severity"]),
        )


@dataclass
class AlignmentReport:
    violations: list[Violation] = field(default_factory=list)

    def passes(self) -> bool:
        return not self.violations

    def hard_violations(self) -> list[Violation]:
        return [v for v in self.violations if v.severity is Severity.HARD]

    def to_dict(self) -> dict:
        return {"violations": [v.to_dict() for v in self.violations]}

    @classmethod
    def from_dict(cls, d: dict) -> "AlignmentReport":
        return cls(violations=[Violation.from_dict(v) for v in d.get("violations", [])])


@dataclass
class EditEvent:
    reviewer_id: str
    timestamp: float
    diff_summary: str

    def to_dict(self) -> dict:
        return {
            "reviewer_id": self.reviewer_id,
            "timestamp": self.timestamp,
            "diff_summary": self.diff_summary,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EditEvent":
        return cls(**d)


@dataclass
class TrainingPair:
    pair_id: str
    input: StructuredInput
    directives: NarrativeDirectives
    novel: Novel
    source_scene_ids: list[str] = field(default_factory=list)
    synthesis_mode: SynthesisMode = SynthesisMode.HYBRID
    filter_state: FilterState = FilterState.PENDING_AUTO
    edit_history: list[EditEvent] = field(default_factory=list)
    rejection_reason: Optional[str] = None
    completion_digests: list[str] = field(default_factory=list)
    conversion_digest: Optional[str] = None  # reverse_only provenance

    @classmethod
    def new_id(cls) -> str:
        return f"pair-{uuid.uuid4().hex[:12]}"

    def record_edit(self, reviewer_id: str, diff_summary: str) -> None:
        self.edit_history.append(
            EditEvent(reviewer_id=reviewer_id, timestamp=time.time(), diff_summary=diff_summary)
        )

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "input": self.input.to_dict(),
            "directives": self.directives.to_dict() if self.directives else None,
            "novel": self.novel.to_dict(),
            "source_scene_ids": list(self.source_scene_ids),
            "synthesis_mode": self.synthesis_mode.value,
            "filter_state": self.filter_state.value,
            "edit_history": [e.to_dict() for e in self.edit_history],
            "rejection_reason": self.rejection_reason,
            "completion_digests": list(self.completion_digests),
            "conversion_digest": self.conversion_digest,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainingPair":
        return cls(
            pair_id=d["pair_id"],
            input=StructuredInput.from_dict(d["input"]),
            directives=(
                NarrativeDirectives.from_dict(d["directives"]) if d.get("directives") else None
            ),
            novel=Novel.from_dict(d["novel"]),
            source_scene_ids=list(d.get("source_scene_ids", [])),
            synthesis_mode=SynthesisMode(d["synthesis_mode"]),
            filter_state=FilterState(d["filter_state"]),
            edit_history=[EditEvent.from_dict(e) for e in d.get("edit_history", [])],
            rejection_reason=d.get("rejection_reason"),
            completion_digests=list(d.get("completion_digests", [])),
            conversion_digest=d.get("conversion_digest"),
        )

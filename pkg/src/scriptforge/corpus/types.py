"""Canonical scene schema and corpus configuration types."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class InteriorExterior(str, Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    MIXED = "mixed"
    UNSPECIFIED = "unspecified"


@dataclass
class DialectConfig:
    """Line-grammar configuration for one screenplay text dialect.

    heading_markers and transition_markers are literal line prefixes,
    matched longest-first. name_alias_map maps canonical character names
    to the alias spellings that standardization rewrites.
    """

    heading_markers: list[str]
    cue_max_length: int = 40
    transition_markers: list[str] = field(default_factory=list)
    name_alias_map: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.heading_markers:
            raise ValueError("heading_markers must be non-empty")
        if self.cue_max_length <= 0:
            raise ValueError("cue_max_length must be positive")
        seen: set[str] = set()
        for aliases in self.name_alias_map.values():
            for alias in aliases:
                if alias in seen:
                    raise ValueError(f"duplicate alias across canonical names: {alias!r}")
                seen.add(alias)

    def alias_lookup(self) -> dict[str, str]:
        """Flat alias -> canonical map."""
        return {
            alias: canonical
            for canonical, aliases in self.name_alias_map.items()
            for alias in aliases
        }


DEFAULT_DIALECT = DialectConfig(
    heading_markers=["INT./EXT.", "INT.", "EXT.", "SCENE:"],
    cue_max_length=40,
    transition_markers=["CUT TO:", "FADE IN:", "FADE OUT.", "DISSOLVE TO:"],
)

# Marker used when serializing each interior/exterior class back to text.
_SERIALIZE_MARKERS = {
    InteriorExterior.INTERIOR: "INT.",
    InteriorExterior.EXTERIOR: "EXT.",
    InteriorExterior.MIXED: "INT./EXT.",
    InteriorExterior.UNSPECIFIED: "SCENE:",
}


@dataclass
class Heading:
    setting: str
    time_of_day: Optional[str] = None
    interior_exterior: InteriorExterior = InteriorExterior.UNSPECIFIED

    def to_line(self) -> str:
        marker = _SERIALIZE_MARKERS[self.interior_exterior]
        line = f"{marker} {self.setting}".rstrip()
        if self.time_of_day:
            line += f" - {self.time_of_day}"
        return line

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "time_of_day": self.time_of_day,
            "interior_exterior": self.interior_exterior.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Heading":
        return cls(
            setting=d["setting"],
            time_of_day=d.get("time_of_day"),
            interior_exterior=InteriorExterior(d.get("interior_exterior", "unspecified")),
        )


@dataclass
class Action:
    text: str
    flagged: bool = False  # set for unparseable spans retained as action

    kind = "action"

    def to_dict(self) -> dict:
        d = {"kind": "action", "text": self.text}
        if self.flagged:
            d["flagged"] = True
        return d


@dataclass
class Dialogue:
    character: str
    lines: list[str]
    parenthetical: Optional[str] = None

    kind = "dialogue"

    def __post_init__(self):
        if not self.character:
            raise ValueError("Dialogue.character must be non-empty")
        if not self.lines:
            raise ValueError("Dialogue.lines must be non-empty")

    def to_dict(self) -> dict:
        return {
            "kind": "dialogue",
            "character": self.character,
            "parenthetical": self.parenthetical,
            "lines": list(self.lines),
        }


@dataclass
class Transition:
    text: str

    kind = "transition"

    def to_dict(self) -> dict:
        return {"kind": "transition", "text": self.text}


Element = Union[Action, Dialogue, Transition]


def element_from_dict(d: dict) -> Element:
    kind = d["kind"]
    if kind == "action":
        return Action(text=d["text"], flagged=d.get("flagged", False))
    if kind == "dialogue":
        return Dialogue(
            character=d["character"],
            lines=list(d["lines"]),
            parenthetical=d.get("parenthetical"),
        )
    if kind == "transition":
        return Transition(text=d["text"])
    raise ValueError(f"unknown element kind: {kind!r}")


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Scene:
    scene_id: str
    series_id: str
    episode_no: int
    scene_index: int
    heading: Heading
    elements: list[Element]
    source_hash: str

    def speakers(self) -> list[str]:
        """Distinct speaking characters in element order."""
        seen: list[str] = []
        for el in self.elements:
            if isinstance(el, Dialogue) and el.character not in seen:
                seen.append(el.character)
        return seen

    def dialogue_count(self) -> int:
        return sum(1 for el in self.elements if isinstance(el, Dialogue))

    def structurally_equal(self, other: "Scene") -> bool:
        """Equality on heading and elements, ignoring identity fields and
        provenance flags."""

        def norm(e: Element) -> dict:
            d = e.to_dict()
            d.pop("flagged", None)
            return d

        return self.heading == other.heading and [
            norm(e) for e in self.elements
        ] == [norm(e) for e in other.elements]

    def to_dict(self) -> dict:
        return {
            "scene_id": self.scene_id,
            "series_id": self.series_id,
            "episode_no": self.episode_no,
            "scene_index": self.scene_index,
            "heading": self.heading.to_dict(),
            "elements": [e.to_dict() for e in self.elements],
            "source_hash": self.source_hash,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Scene":
        return cls(
            scene_id=d["scene_id"],
            series_id=d["series_id"],
            episode_no=d["episode_no"],
            scene_index=d["scene_index"],
            heading=Heading.from_dict(d["heading"]),
            elements=[element_from_dict(e) for e in d["elements"]],
            source_hash=d["source_hash"],
        )


class DropReason(str, Enum):
    TOO_SHORT = "too_short"
    TOO_LONG = "too_long"
    NO_DIALOGUE = "no_dialogue"
    NOISY = "noisy"


@dataclass
class FilterRuleSet:
    min_elements: int = 1
    min_dialogue_blocks: int = 0
    max_chars: int = 20000
    noise_patterns: list[str] = field(default_factory=list)
    noise_ratio_threshold: float = 1.0

    def __post_init__(self):
        if self.min_elements < 1:
            raise ValueError("min_elements must be >= 1")
        if not 0.0 <= self.noise_ratio_threshold <= 1.0:
            raise ValueError("noise_ratio_threshold must be in [0, 1]")

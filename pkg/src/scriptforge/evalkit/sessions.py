"""Blind session construction: opaque labels, per-rater shuffling, and
strictly server-side label maps."""
from __future__ import annotations

import random
import string
import uuid
from dataclasses import dataclass, field

from ..errors import TooFewCandidates

_LABEL_ALPHABET = string.ascii_uppercase


def _labels(n: int) -> list[str]:
    out = []
    for i in range(n):
        label = ""
        k = i
        while True:
            label = _LABEL_ALPHABET[k % 26] + label
            k = k // 26 - 1
            if k < 0:
                break
        out.append(label)
    return out


@dataclass
class BlindScene:
    """One scene's blinded candidates. label_map never leaves the server."""

    scene_id: str
    blinded_labels: list[str]
    label_map: dict[str, str]
    texts_by_label: dict[str, str]
    seed: int

    def rater_payload(self, rater_id: str) -> dict:
        """Candidates in a rater-specific randomized order, with no system
        identity anywhere in the payload."""
        order = list(self.blinded_labels)
        random.Random(f"{self.seed}:{self.scene_id}:{rater_id}").shuffle(order)
        return {
            "scene_id": self.scene_id,
            "candidates": [
                {"label": label, "text": self.texts_by_label[label]} for label in order
            ],
        }


def build_blind_session(
    scene_id: str,
    system_outputs: dict[str, str],
    seed: int = 0,
) -> BlindScene:
    """Assign opaque labels to the candidate outputs by seeded shuffle."""
    if len(system_outputs) < 2:
        raise TooFewCandidates(
            f"blind comparison needs >= 2 candidates, got {len(system_outputs)}"
        )
    systems = sorted(system_outputs)
    random.Random(f"{seed}:{scene_id}").shuffle(systems)
    labels = _labels(len(systems))
    label_map = dict(zip(labels, systems))
    return BlindScene(
        scene_id=scene_id,
        blinded_labels=labels,
        label_map=label_map,
        texts_by_label={label: system_outputs[sys] for label, sys in label_map.items()},
        seed=seed,
    )


@dataclass
class EvalSession:
    """A full evaluation suite: blinded scenes plus collected records."""

    session_id: str = field(default_factory=lambda: f"session-{uuid.uuid4().hex[:12]}")
    scenes: dict[str, BlindScene] = field(default_factory=dict)
    human_system: str | None = None
    baseline_system: str | None = None

    def systems(self) -> list[str]:
        out: set[str] = set()
        for scene in self.scenes.values():
            out.update(scene.label_map.values())
        return sorted(out)

    def resolve(self, scene_id: str, label: str) -> str:
        return self.scenes[scene_id].label_map[label]

"""Twelve-point expert scale partitioned into six named quality tiers."""
from __future__ import annotations

from ..errors import OutOfRange

MIN_SCORE = 1
MAX_SCORE = 12

# (tier name, lowest score, highest score) — bands exactly cover 1..12
TIERS: tuple[tuple[str, int, int], ...] = (
    ("Unacceptable", 1, 3),
    ("Flawed", 4, 5),
    ("Acceptable", 6, 7),
    ("Good", 8, 8),
    ("Excellent", 9, 10),
    ("Exceptional", 11, 12),
)

TIER_DESCRIPTIONS = {
    "Unacceptable": "Fails dramatic requirements; significant logical errors or incoherence.",
    "Flawed": "Falls short of dramatic requirements; notable logic or coherence problems.",
    "Acceptable": "Meets the core dramatic requirements despite minor issues.",
    "Good": "Solid execution across prompt adherence, structure, and coherence.",
    "Excellent": "Strong narrative structure with perfect adherence to prompt and logic.",
    "Exceptional": "Flawless execution; directly usable.",
}


def tier_of(score: int) -> str:
    if not isinstance(score, int) or isinstance(score, bool):
        raise OutOfRange(f"score must be an integer, got {score!r}")
    if not MIN_SCORE <= score <= MAX_SCORE:
        raise OutOfRange(f"score {score} outside [{MIN_SCORE}, {MAX_SCORE}]")
    for name, lo, hi in TIERS:
        if lo <= score <= hi:
            return name
    raise AssertionError("unreachable: tiers partition the scale")

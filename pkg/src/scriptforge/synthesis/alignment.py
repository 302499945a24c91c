"""Automated input/output alignment checks.

Name grounding uses exact roster matching plus a capitalization heuristic
for Latin scripts; outline-beat coverage uses content-word lexical overlap.
Both are deterministic with no model dependency.
"""
from __future__ import annotations

import re

from .types import (
    AlignmentReport,
    Novel,
    Severity,
    StructuredInput,
    Violation,
    ViolationKind,
)

_CAP_TOKEN_RE = re.compile(r"\b[A-Z][a-zA-Z]+\b")
_WORD_RE = re.compile(r"[\w']+", re.UNICODE)

_STOPWORDS = {
    "a", "an", "the", "and", "or", "but", "of", "in", "on", "at", "to", "for",
    "with", "by", "from", "as", "is", "are", "was", "were", "be", "been", "it",
    "its", "he", "she", "his", "her", "him", "they", "them", "their", "this",
    "that", "these", "those", "then", "there", "here", "not", "no", "into",
    "over", "under", "up", "down", "out", "about", "after", "before", "while",
    "when", "you", "your", "we", "our", "i", "me", "my",
}


def _words(text: str) -> set[str]:
    return {w.lower() for w in _WORD_RE.findall(text)}


def _content_words(text: str) -> set[str]:
    return _words(text) - _STOPWORDS


def _sentences(text: str) -> list[str]:
    return [s.strip() for s in re.split(r"[.!?。！？]+", text) if s.strip()]


def check_alignment(
    input: StructuredInput,
    novel: Novel,
    overlap_threshold: int = 1,
) -> AlignmentReport:
    """Report ungrounded names in the novel and outline beats it misses."""
    violations: list[Violation] = []

    grounding_text = " ".join(
        [input.outline, input.previous_context]
        + input.metadata
        + [
            f"{c.name} {c.background} {c.personality} {c.relationships}"
            for c in input.character_profiles
        ]
    )
    grounded = _words(grounding_text)
    roster_words = set()
    for c in input.character_profiles:
        roster_words.update(_words(c.name))

    novel_text = novel.text()
    flagged: set[str] = set()
    for token in _CAP_TOKEN_RE.findall(novel_text):
        low = token.lower()
        if low in grounded or low in roster_words or token in flagged:
            continue
        flagged.add(token)
        violations.append(
            Violation(
                kind=ViolationKind.UNGROUNDED_NAME,
                evidence_span=token,
                severity=Severity.HARD,
            )
        )

    novel_words = _content_words(novel_text)
    for sentence in _sentences(input.outline):
        content = _content_words(sentence)
        if not content:
            continue
        if len(content & novel_words) < overlap_threshold:
            violations.append(
                Violation(
                    kind=ViolationKind.MISSING_OUTLINE_BEAT,
                    evidence_span=sentence,
                    severity=Severity.SOFT,
                )
            )

    return AlignmentReport(violations=violations)

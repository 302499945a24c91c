"""Deterministic mock backend rule sets for offline runs and tests.

Each rule keys on a distinctive phrase of one shipped prompt template and
builds its response from captured prompt content, so every downstream
artifact stays grounded in the source material.
"""
from __future__ import annotations

import re

from .backend import MockRule

_CANNED_SCENE_TEMPLATE = (
    "INT. STUDY - NIGHT\n"
    "\n"
    "The door swings open and papers scatter across the desk.\n"
    "\n"
    "\\1\n"
    "We need to talk. Now.\n"
)


def build_default_mock_rules() -> list[MockRule]:
    return [
        MockRule(
            pattern=re.escape("reconstructing the writer's brief")
            + r".*Screenplay scene:\n(.*)$",
            response=r"\1",
        ),
        MockRule(
            pattern=re.escape("previous-context note"),
            response="Earlier, tensions rose between the principals and a secret surfaced.",
        ),
        MockRule(
            pattern=re.escape("write the profile of the character named"),
            response=(
                "background: A figure whose history is implied by the source scene.\n"
                "personality: Determined and guarded under pressure.\n"
                "relationships: Bound to the others present in this scene."
            ),
        ),
        MockRule(
            pattern=re.escape("describe its exposition strategy"),
            response="Facts surface in scene order, the key reveal held for the final beat.",
        ),
        MockRule(
            pattern=re.escape("describe its narrative pacing"),
            response="A steady build with one held pause before the turn.",
        ),
        MockRule(
            pattern=re.escape("answer with exactly two labeled lines"),
            response=(
                "Action: Blocking tracks the conflict; movement peaks at the confrontation.\n"
                "Emotion: Composure erodes into open anger, then settles into resolve."
            ),
        ),
        MockRule(
            pattern=re.escape("Expand the creative brief below")
            + r".*<outline>\n(.*?)\n</outline>",
            response="\\1\n\n\\1",
        ),
        MockRule(
            pattern=re.escape("Convert the screenplay scene below into novel-style")
            + r".*Screenplay scene:\n(.*)$",
            response=r"\1",
        ),
        MockRule(
            pattern=re.escape("Respond in exactly this format:")
            + r".*<outline>\n(.*?)\n</outline>",
            response=(
                "<directives>\n"
                "Exposition Strategy: Reveal facts in scene order.\n"
                "Narrative Pacing: Steady build to the final beat.\n"
                "Character Action: Blocking follows the conflict.\n"
                "Character Emotion: Tension rises, then releases.\n"
                "</directives>\n"
                "<novel>\n"
                "\\1\n"
                "\n"
                "\\1\n"
                "</novel>"
            ),
        ),
        MockRule(
            pattern=re.escape("Convert the narrative prose below")
            + r".*<character>\nname: ([^\n]+)\n",
            response=_CANNED_SCENE_TEMPLATE,
        ),
        MockRule(
            pattern=re.escape("Write a complete, correctly formatted screenplay scene")
            + r".*<character>\nname: ([^\n]+)\n",
            response=_CANNED_SCENE_TEMPLATE,
        ),
    ]

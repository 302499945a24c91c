"""Prompt templates with `{placeholder}` slots, loaded from asset files.

Asset format: a `---` fenced front-matter header carrying name, slots and
language, followed by the template body.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass

from ..errors import MissingSlot, UnknownSlot

_SLOT_RE = re.compile(r"\{([a-zA-Z_][a-zA-Z0-9_]*)\}")

ASSET_DIR = os.path.join(os.path.dirname(__file__), "..", "assets", "prompts")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    required_slots: frozenset[str]
    language_tag: str = "en"

    def validate(self) -> None:
        """Slot/body consistency: `{...}` tokens and required_slots match."""
        in_body = set(_SLOT_RE.findall(self.body))
        if in_body != set(self.required_slots):
            raise ValueError(
                f"template {self.name!r}: body slots {sorted(in_body)} != "
                f"declared slots {sorted(self.required_slots)}"
            )
        if self.language_tag not in ("zh", "en"):
            raise ValueError(f"template {self.name!r}: bad language_tag {self.language_tag!r}")


def render_prompt(template: PromptTemplate, bindings: dict[str, str], strict: bool = True) -> str:
    for slot in sorted(template.required_slots):
        if slot not in bindings:
            raise MissingSlot(slot)
    if strict:
        for key in bindings:
            if key not in template.required_slots:
                raise UnknownSlot(key)

    def sub(match: re.Match) -> str:
        return bindings[match.group(1)]

    return _SLOT_RE.sub(sub, template.body)


def parse_template_file(text: str) -> PromptTemplate:
    if not text.startswith("---"):
        raise ValueError("template file missing front-matter header")
    _, header, body = text.split("---", 2)
    meta: dict[str, str] = {}
    for line in header.strip().splitlines():
        key, _, value = line.partition(":")
        meta[key.strip()] = value.strip()
    slots = frozenset(s.strip() for s in meta.get("slots", "").split(",") if s.strip())
    return PromptTemplate(
        name=meta["name"],
        body=body.lstrip("\n"),
        required_slots=slots,
        language_tag=meta.get("language", "en"),
    )


class TemplateCatalog:
    """All templates from a prompts/ directory, validated at load time."""

    def __init__(self, templates: dict[str, PromptTemplate]):
        self.templates = templates

    @classmethod
    def load(cls, directory: str | None = None) -> "TemplateCatalog":
        directory = directory or ASSET_DIR
        templates: dict[str, PromptTemplate] = {}
        for fname in sorted(os.listdir(directory)):
            if not fname.endswith(".txt"):
                continue
            with open(os.path.join(directory, fname), encoding="utf-8") as fh:
                tpl = parse_template_file(fh.read())
            tpl.validate()
            if tpl.name in templates:
                raise ValueError(f"duplicate template name: {tpl.name}")
            templates[tpl.name] = tpl
        return cls(templates)

    def __getitem__(self, name: str) -> PromptTemplate:
        return self.templates[name]

    def __contains__(self, name: str) -> bool:
        return name in self.templates

    def names(self) -> list[str]:
        return sorted(self.templates)


_default_catalog: TemplateCatalog | None = None


def default_catalog() -> TemplateCatalog:
    global _default_catalog
    if _default_catalog is None:
        _default_catalog = TemplateCatalog.load()
    return _default_catalog

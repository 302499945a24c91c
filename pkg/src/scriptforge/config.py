"""Plain-text key-value configuration (INI sections) for the toolkit."""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field

from .backend import BackendKind, BackendProfile, RetryPolicy
from .corpus import DEFAULT_DIALECT, DialectConfig, FilterRuleSet
from .synthesis.forward import default_lexicon, load_lexicon


@dataclass
class ServiceSettings:
    port: int = 8040
    data_dir: str = "data"
    lease_ttl_seconds: float = 1800.0  # 30-minute review leases
    job_workers: int = 2


@dataclass
class SynthesisSettings:
    min_paragraphs: int = 2
    overlap_threshold: int = 1
    min_novel_chars: int = 1
    max_novel_chars: int = 200_000
    lexicon_language: str = "en"
    lexicon_path: str | None = None


@dataclass
class ForgeConfig:
    dialect: DialectConfig = field(default_factory=lambda: DEFAULT_DIALECT)
    rules: FilterRuleSet = field(default_factory=FilterRuleSet)
    profiles: dict[str, BackendProfile] = field(default_factory=dict)
    service: ServiceSettings = field(default_factory=ServiceSettings)
    synthesis: SynthesisSettings = field(default_factory=SynthesisSettings)
    series_allowlist: list[str] | None = None

    def lexicon(self) -> list[str]:
        if self.synthesis.lexicon_path:
            return load_lexicon(self.synthesis.lexicon_path)
        return default_lexicon(self.synthesis.lexicon_language)

    def profile(self, name: str) -> BackendProfile:
        if name in self.profiles:
            return self.profiles[name]
        if name in ("mock", "replay"):
            return BackendProfile(backend_kind=BackendKind(name), model_name=name)
        raise KeyError(f"unknown backend profile: {name!r}")


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split("|") if v.strip()]


def load_config(path: str | None = None, overrides: dict[str, str] | None = None) -> ForgeConfig:
    """Load an INI config file; missing file or sections fall back to defaults."""
    parser = configparser.ConfigParser()
    if path:
        if not os.path.exists(path):
            raise FileNotFoundError(path)
        parser.read(path, encoding="utf-8")
    if overrides:
        for dotted, value in overrides.items():
            section, _, key = dotted.partition(".")
            if not parser.has_section(section):
                parser.add_section(section)
            parser.set(section, key, value)

    config = ForgeConfig()

    if parser.has_section("dialect") or parser.has_section("aliases"):
        d = parser["dialect"] if parser.has_section("dialect") else {}
        aliases = {}
        if parser.has_section("aliases"):
            aliases = {name: _split(v) for name, v in parser["aliases"].items()}
        config.dialect = DialectConfig(
            heading_markers=_split(d.get("heading_markers", "|".join(DEFAULT_DIALECT.heading_markers))),
            cue_max_length=int(d.get("cue_max_length", DEFAULT_DIALECT.cue_max_length)),
            transition_markers=_split(
                d.get("transition_markers", "|".join(DEFAULT_DIALECT.transition_markers))
            ),
            name_alias_map=aliases,
        )

    if parser.has_section("filter"):
        f = parser["filter"]
        config.rules = FilterRuleSet(
            min_elements=int(f.get("min_elements", "1")),
            min_dialogue_blocks=int(f.get("min_dialogue_blocks", "0")),
            max_chars=int(f.get("max_chars", "20000")),
            noise_patterns=_split(f.get("noise_patterns", "")),
            noise_ratio_threshold=float(f.get("noise_ratio_threshold", "1.0")),
        )

    for section in parser.sections():
        if not section.startswith("backend."):
            continue
        name = section.split(".", 1)[1]
        b = parser[section]
        config.profiles[name] = BackendProfile(
            backend_kind=BackendKind(b.get("kind", "mock")),
            model_name=b.get("model_name", name),
            endpoint=b.get("endpoint") or None,
            temperature=float(b.get("temperature", "0.7")),
            top_p=float(b.get("top_p", "0.9")),
            max_output_chars=int(b.get("max_output_chars", "200000")),
            retry_policy=RetryPolicy(
                max_attempts=int(b.get("max_attempts", "3")),
                backoff_base_ms=int(b.get("backoff_base_ms", "100")),
            ),
        )

    if parser.has_section("service"):
        s = parser["service"]
        config.service = ServiceSettings(
            port=int(s.get("port", "8040")),
            data_dir=s.get("data_dir", "data"),
            lease_ttl_seconds=float(s.get("lease_ttl_seconds", "1800")),
            job_workers=int(s.get("job_workers", "2")),
        )

    if parser.has_section("synthesis"):
        s = parser["synthesis"]
        config.synthesis = SynthesisSettings(
            min_paragraphs=int(s.get("min_paragraphs", "2")),
            overlap_threshold=int(s.get("overlap_threshold", "1")),
            min_novel_chars=int(s.get("min_novel_chars", "1")),
            max_novel_chars=int(s.get("max_novel_chars", "200000")),
            lexicon_language=s.get("lexicon_language", "en"),
            lexicon_path=s.get("lexicon_path") or None,
        )

    if parser.has_section("corpus"):
        allow = parser["corpus"].get("series_allowlist", "")
        if allow:
            config.series_allowlist = _split(allow)

    return config

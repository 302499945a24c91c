from .types import (
    Action,
    DEFAULT_DIALECT,
    DialectConfig,
    Dialogue,
    DropReason,
    Element,
    FilterRuleSet,
    Heading,
    InteriorExterior,
    Scene,
    Transition,
    content_hash,
)
from .parser import (
    parse_screenplay,
    partition_holds,
    serialize_scene,
    serialize_scenes,
)
from .standardize import normalize_whitespace, standardize
from .filtering import Verdict, filter_scene, noise_ratio
from .store import CorpusStats, CorpusStore, corpus_stats

__all__ = [
    "Action",
    "DEFAULT_DIALECT",
    "DialectConfig",
    "Dialogue",
    "DropReason",
    "Element",
    "FilterRuleSet",
    "Heading",
    "InteriorExterior",
    "Scene",
    "Transition",
    "content_hash",
    "parse_screenplay",
    "partition_holds",
    "serialize_scene",
    "serialize_scenes",
    "normalize_whitespace",
    "standardize",
    "Verdict",
    "filter_scene",
    "noise_ratio",
    "CorpusStats",
    "CorpusStore",
    "corpus_stats",
]

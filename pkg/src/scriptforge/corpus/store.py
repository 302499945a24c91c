"""Corpus ingestion and statistics over the record store."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..storage import Store
from .filtering import Verdict, filter_scene
from .parser import parse_screenplay
from .standardize import standardize
from .types import DialectConfig, DropReason, FilterRuleSet, Scene

SCENE_KIND = "scene"
VERDICT_KIND = "scene_verdict"


@dataclass
class CorpusStats:
    series_count: int = 0
    episode_count: int = 0
    scene_count: int = 0
    kept_count: int = 0
    drop_histogram: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "series_count": self.series_count,
            "episode_count": self.episode_count,
            "scene_count": self.scene_count,
            "kept_count": self.kept_count,
            "drop_histogram": dict(self.drop_histogram),
        }


class CorpusStore:
    """Corpus handle: standardized scenes plus their filter verdicts.

    Scenes are deduplicated by source_hash; re-ingesting identical input
    is a no-op, keeping stats stable across repeated runs.
    """

    def __init__(self, store: Store):
        self.store = store

    def ingest_text(
        self,
        raw: str,
        dialect: DialectConfig,
        rules: FilterRuleSet,
        series_id: str,
        episode_no: int,
        series_allowlist: list[str] | None = None,
    ) -> list[Scene]:
        if series_allowlist is not None and series_id not in series_allowlist:
            return []
        scenes = parse_screenplay(raw, dialect, series_id=series_id, episode_no=episode_no)
        stored: list[Scene] = []
        seen_hashes = {
            r.payload["source_hash"] for r in self.store.list(SCENE_KIND)
        }
        for scene in scenes:
            scene = standardize(scene, dialect)
            if scene.source_hash in seen_hashes:
                continue
            seen_hashes.add(scene.source_hash)
            verdict = filter_scene(scene, rules)
            self.store.put(SCENE_KIND, scene.scene_id, scene.to_dict())
            self.store.put(
                VERDICT_KIND,
                scene.scene_id,
                {"keep": verdict.keep, "reason": verdict.reason.value if verdict.reason else None},
            )
            stored.append(scene)
        return stored

    def ingest_directory(
        self,
        root: str,
        dialect: DialectConfig,
        rules: FilterRuleSet,
        series_allowlist: list[str] | None = None,
    ) -> int:
        """Ingest `<series>/<episode>.txt` files under root."""
        count = 0
        for series_id in sorted(os.listdir(root)):
            series_dir = os.path.join(root, series_id)
            if not os.path.isdir(series_dir):
                continue
            for fname in sorted(os.listdir(series_dir)):
                if not fname.endswith(".txt"):
                    continue
                episode_no = int(os.path.splitext(fname)[0])
                with open(os.path.join(series_dir, fname), encoding="utf-8") as fh:
                    raw = fh.read()
                count += len(
                    self.ingest_text(
                        raw, dialect, rules, series_id, episode_no, series_allowlist
                    )
                )
        return count

    def scenes(self, kept_only: bool = False) -> list[Scene]:
        out = []
        for rec in self.store.list(SCENE_KIND):
            if kept_only:
                v = self.store.get(VERDICT_KIND, rec.key)
                if v is None or not v.payload["keep"]:
                    continue
            out.append(Scene.from_dict(rec.payload))
        out.sort(key=lambda s: (s.series_id, s.episode_no, s.scene_index))
        return out

    def get_scene(self, scene_id: str) -> Scene | None:
        rec = self.store.get(SCENE_KIND, scene_id)
        return Scene.from_dict(rec.payload) if rec else None

    def export_jsonl(self, path: str, kept_only: bool = True) -> int:
        scenes = self.scenes(kept_only=kept_only)
        with open(path, "w", encoding="utf-8") as fh:
            for scene in scenes:
                fh.write(scene.to_json() + "\n")
        return len(scenes)


def corpus_stats(corpus: CorpusStore) -> CorpusStats:
    stats = CorpusStats()
    series: set[str] = set()
    episodes: set[tuple[str, int]] = set()
    for rec in corpus.store.list(SCENE_KIND):
        scene = rec.payload
        series.add(scene["series_id"])
        episodes.add((scene["series_id"], scene["episode_no"]))
        stats.scene_count += 1
        verdict = corpus.store.get(VERDICT_KIND, rec.key)
        if verdict and verdict.payload["keep"]:
            stats.kept_count += 1
        elif verdict:
            reason = verdict.payload["reason"]
            stats.drop_histogram[reason] = stats.drop_histogram.get(reason, 0) + 1
    stats.series_count = len(series)
    stats.episode_count = len(episodes)
    assert set(stats.drop_histogram) <= {r.value for r in DropReason}
    return stats

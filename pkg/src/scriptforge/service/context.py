"""Service context: wires storage, backends, corpus, pairs, and sessions.

One context instance backs both the CLI subcommands and the REST API, so
batch and interactive paths share identical behavior.
"""
from __future__ import annotations

import json
import os
from typing import Optional

from ..backend import BackendKind, BackendProfile, CompletionCache, CompletionClient, TemplateCatalog, default_catalog
from ..config import ForgeConfig
from ..corpus import CorpusStore, corpus_stats, serialize_scene
from ..dsr import GenerationRun, run_dsr, run_end_to_end
from ..evalkit import (
    ComparisonRecord,
    ErrorNote,
    RatingRecord,
    build_blind_session,
    build_report,
)
from ..evalkit.sessions import BlindScene
from ..errors import IncompleteSuite, InvalidParams
from ..mocking import build_default_mock_rules
from ..storage import Store
from ..synthesis import (
    FilterState,
    SynthesisMode,
    TrainingPair,
    export_sft,
    synthesize_pair,
)
from ..synthesis.statemachine import AutoCheckConfig, run_multistage_filter
from .review import PairRepository, ReviewQueue

SESSION_KIND = "eval_session"
RATING_KIND = "rating"
COMPARISON_KIND = "comparison"
RUN_KIND = "run"


class ServiceContext:
    def __init__(
        self,
        config: ForgeConfig,
        data_dir: str | None = None,
        mock: bool = False,
        replay: bool = False,
        catalog: TemplateCatalog | None = None,
        mock_rules=None,
    ):
        self.config = config
        self.data_dir = data_dir or config.service.data_dir
        os.makedirs(self.data_dir, exist_ok=True)
        self.store = Store(os.path.join(self.data_dir, "store.jsonl"))
        self.cache = CompletionCache(os.path.join(self.data_dir, "completions.jsonl"))
        self.catalog = catalog or default_catalog()
        self.corpus = CorpusStore(self.store)
        self.pairs = PairRepository(self.store)
        self.review_queue = ReviewQueue(
            self.pairs, lease_ttl_seconds=config.service.lease_ttl_seconds
        )
        self.mock = mock
        self.replay = replay
        self.client = CompletionClient(
            self.cache, mock_rules=mock_rules or build_default_mock_rules()
        )
        self.runs_dir = os.path.join(self.data_dir, "runs")

    # --- backends ---

    def profile(self, name: str) -> BackendProfile:
        profile = self.config.profile(name)
        if self.replay and profile.backend_kind is not BackendKind.REPLAY:
            return BackendProfile(
                backend_kind=BackendKind.REPLAY,
                model_name=profile.model_name,
                endpoint=profile.endpoint,
                temperature=profile.temperature,
                top_p=profile.top_p,
                max_output_chars=profile.max_output_chars,
                retry_policy=profile.retry_policy,
            )
        if self.mock and profile.backend_kind is BackendKind.REMOTE_API:
            return BackendProfile(
                backend_kind=BackendKind.MOCK,
                model_name=profile.model_name,
                temperature=profile.temperature,
                top_p=profile.top_p,
                max_output_chars=profile.max_output_chars,
            )
        return profile

    def auto_config(self) -> AutoCheckConfig:
        s = self.config.synthesis
        return AutoCheckConfig(
            lexicon=self.config.lexicon(),
            overlap_threshold=s.overlap_threshold,
            min_novel_chars=s.min_novel_chars,
            max_novel_chars=s.max_novel_chars,
        )

    # --- pipeline operations ---

    def ingest(self, corpus_dir: str, progress=None) -> dict:
        count = self.corpus.ingest_directory(
            corpus_dir,
            self.config.dialect,
            self.config.rules,
            series_allowlist=self.config.series_allowlist,
        )
        stats = corpus_stats(self.corpus)
        return {"ingested": count, "stats": stats.to_dict()}

    def synthesize(
        self,
        profile_name: str,
        mode: str = "hybrid",
        limit: int | None = None,
        progress=None,
    ) -> dict:
        profile = self.profile(profile_name)
        scenes = self.corpus.scenes(kept_only=True)
        if limit:
            scenes = scenes[:limit]
        by_episode: dict[tuple[str, int], list] = {}
        for scene in scenes:
            by_episode.setdefault((scene.series_id, scene.episode_no), []).append(scene)
        pair_ids = []
        total = len(scenes)
        done = 0
        for key, episode_scenes in sorted(by_episode.items()):
            episode_scenes.sort(key=lambda s: s.scene_index)
            for i, scene in enumerate(episode_scenes):
                pair = synthesize_pair(
                    scene,
                    episode_scenes[:i],
                    profile,
                    self.client,
                    self.catalog,
                    mode=SynthesisMode(mode),
                    lexicon=self.config.lexicon(),
                    min_paragraphs=self.config.synthesis.min_paragraphs,
                    auto_filter=self.auto_config(),
                )
                self.pairs.save(pair)
                pair_ids.append(pair.pair_id)
                done += 1
                if progress:
                    progress(done, total)
        states: dict[str, int] = {}
        for pid in pair_ids:
            state = self.pairs.get(pid).filter_state.value
            states[state] = states.get(state, 0) + 1
        return {"pairs": pair_ids, "state_counts": states}

    def filter_pending(self, progress=None) -> dict:
        pending = self.pairs.in_state(FilterState.PENDING_AUTO)
        for i, pair in enumerate(pending):
            run_multistage_filter(pair, self.auto_config())
            self.pairs.save(pair)
            if progress:
                progress(i + 1, len(pending))
        return {"filtered": len(pending)}

    def export(
        self, path: str, mode: str = "hybrid", include_cot: bool = True, pipeline: str = "dsr"
    ) -> dict:
        pairs = [
            p
            for p in self.pairs.all()
            if p.filter_state in (FilterState.APPROVED, FilterState.EDITED)
            and p.synthesis_mode is SynthesisMode(mode)
        ]

        def scene_text(pair: TrainingPair) -> str:
            texts = []
            for scene_id in pair.source_scene_ids:
                scene = self.corpus.get_scene(scene_id)
                if scene:
                    texts.append(serialize_scene(scene))
            return "\n".join(texts)

        manifest = export_sft(
            pairs,
            SynthesisMode(mode),
            include_cot,
            pipeline,
            path,
            self.catalog,
            scene_text_lookup=scene_text if pipeline == "end_to_end" else None,
        )
        return manifest.to_dict()

    def generate(
        self,
        input_payload: dict,
        pipeline: str = "dsr",
        stage1_profile: str = "mock",
        stage2_profile: str = "mock",
        progress=None,
    ) -> GenerationRun:
        from ..synthesis import StructuredInput

        brief = StructuredInput.from_dict(input_payload)
        if pipeline == "dsr":
            run = run_dsr(
                brief,
                self.profile(stage1_profile),
                self.profile(stage2_profile),
                self.client,
                self.catalog,
                runs_dir=self.runs_dir,
                dialect=self.config.dialect,
                lexicon=self.config.lexicon(),
            )
        elif pipeline in ("e2e", "end_to_end"):
            run = run_end_to_end(
                brief,
                self.profile(stage1_profile),
                self.client,
                self.catalog,
                runs_dir=self.runs_dir,
                dialect=self.config.dialect,
                lexicon=self.config.lexicon(),
            )
        else:
            raise InvalidParams(f"unknown pipeline: {pipeline!r}")
        self.store.put(RUN_KIND, run.run_id, run.to_dict())
        return run

    # --- evaluation sessions ---

    def create_session(
        self,
        scenes: list[dict],
        human_system: str | None = None,
        baseline_system: str | None = None,
        seed: int = 0,
    ) -> str:
        import uuid

        session_id = f"session-{uuid.uuid4().hex[:12]}"
        payload = {
            "scenes": {},
            "human_system": human_system,
            "baseline_system": baseline_system,
            "seed": seed,
        }
        for entry in scenes:
            blind = build_blind_session(entry["scene_id"], entry["outputs"], seed=seed)
            payload["scenes"][blind.scene_id] = {
                "blinded_labels": blind.blinded_labels,
                "label_map": blind.label_map,
                "texts_by_label": blind.texts_by_label,
            }
        self.store.put(SESSION_KIND, session_id, payload)
        return session_id

    def _session(self, session_id: str) -> dict:
        rec = self.store.get(SESSION_KIND, session_id)
        if rec is None:
            raise KeyError(f"unknown session: {session_id}")
        return rec.payload

    def session_scene(self, session_id: str, scene_id: str) -> BlindScene:
        data = self._session(session_id)["scenes"][scene_id]
        return BlindScene(
            scene_id=scene_id,
            blinded_labels=data["blinded_labels"],
            label_map=data["label_map"],
            texts_by_label=data["texts_by_label"],
            seed=self._session(session_id)["seed"],
        )

    def next_task(self, session_id: str, rater_id: str) -> Optional[dict]:
        session = self._session(session_id)
        for scene_id in sorted(session["scenes"]):
            key = f"{session_id}:{scene_id}:{rater_id}"
            if self.store.get(COMPARISON_KIND, key) is None:
                payload = self.session_scene(session_id, scene_id).rater_payload(rater_id)
                payload["session_id"] = session_id
                payload["progress"] = self._progress(session_id, rater_id)
                return payload
        return None

    def _progress(self, session_id: str, rater_id: str) -> dict:
        session = self._session(session_id)
        total = len(session["scenes"])
        done = sum(
            1
            for scene_id in session["scenes"]
            if self.store.get(COMPARISON_KIND, f"{session_id}:{scene_id}:{rater_id}")
        )
        return {"completed": done, "total": total}

    def submit_rating(
        self,
        session_id: str,
        scene_id: str,
        label: str,
        score: int,
        rater_id: str,
        errors: list[dict] | None = None,
    ) -> RatingRecord:
        scene = self.session_scene(session_id, scene_id)
        if label not in scene.blinded_labels:
            raise InvalidParams(f"unknown candidate label {label!r}")
        record = RatingRecord(
            script_ref=scene_id,
            rater_id=rater_id,
            score=score,
            errors=[ErrorNote.from_dict(e) for e in (errors or [])],
        )
        key = f"{session_id}:{scene_id}:{label}:{rater_id}"
        self.store.put(RATING_KIND, key, {"label": label, **record.to_dict()})
        return record

    def submit_comparison(
        self, session_id: str, scene_id: str, choice: str, rater_id: str
    ) -> ComparisonRecord:
        scene = self.session_scene(session_id, scene_id)
        record = ComparisonRecord(
            session_id=session_id,
            scene_id=scene_id,
            blinded_labels=scene.blinded_labels,
            label_map=scene.label_map,
            choice=choice,
            rater_id=rater_id,
        )
        key = f"{session_id}:{scene_id}:{rater_id}"
        self.store.put(
            COMPARISON_KIND, key, {"choice": choice, "scene_id": scene_id, "rater_id": rater_id}
        )
        return record

    def session_report(self, session_id: str) -> dict:
        session = self._session(session_id)
        scene_ids = sorted(session["scenes"])

        # group ratings per (system, scene)
        per_system: dict[str, dict[str, list[RatingRecord]]] = {}
        prefix = f"{session_id}:"
        for rec in self.store.list(RATING_KIND):
            if not rec.key.startswith(prefix):
                continue
            payload = dict(rec.payload)
            label = payload.pop("label")
            record = RatingRecord.from_dict(payload)
            scene_id = record.script_ref
            system = session["scenes"][scene_id]["label_map"][label]
            per_system.setdefault(system, {}).setdefault(scene_id, []).append(record)

        comparisons: list[ComparisonRecord] = []
        for rec in self.store.list(COMPARISON_KIND):
            if not rec.key.startswith(prefix):
                continue
            scene_id = rec.payload["scene_id"]
            scene = self.session_scene(session_id, scene_id)
            comparisons.append(
                ComparisonRecord(
                    session_id=session_id,
                    scene_id=scene_id,
                    blinded_labels=scene.blinded_labels,
                    label_map=scene.label_map,
                    choice=rec.payload["choice"],
                    rater_id=rec.payload["rater_id"],
                )
            )

        all_systems = sorted(
            {s for sc in session["scenes"].values() for s in sc["label_map"].values()}
        )
        rated_scenes = {
            scene_id for scenes in per_system.values() for scene_id in scenes
        }
        compared_scenes = {c.scene_id for c in comparisons}
        complete = all(
            set(per_system.get(s, {})) == set(scene_ids) for s in all_systems
        ) and compared_scenes == set(scene_ids)

        ratings_by_system = {
            system: [scenes[sid] for sid in sorted(scenes)]
            for system, scenes in per_system.items()
        }
        try:
            report = build_report(
                ratings_by_system,
                comparisons or None,
                len(scene_ids),
                human_system=session.get("human_system"),
                baseline_system=session.get("baseline_system"),
                complete=complete,
            )
        except IncompleteSuite:
            report = build_report(
                ratings_by_system,
                None,
                None,
                human_system=session.get("human_system"),
                baseline_system=session.get("baseline_system"),
                complete=False,
            )
        return report.to_dict()

    def import_eval_jsonl(self, session_id: str, ratings_path=None, comparisons_path=None) -> dict:
        imported = {"ratings": 0, "comparisons": 0}
        if ratings_path:
            with open(ratings_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    d = json.loads(line)
                    self.submit_rating(
                        session_id,
                        d["scene_id"],
                        d["label"],
                        d["score"],
                        d["rater_id"],
                        d.get("errors"),
                    )
                    imported["ratings"] += 1
        if comparisons_path:
            with open(comparisons_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    d = json.loads(line)
                    self.submit_comparison(
                        session_id, d["scene_id"], d["choice"], d["rater_id"]
                    )
                    imported["comparisons"] += 1
        return imported

    def close(self) -> None:
        self.store.close()

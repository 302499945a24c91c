import json

import pytest
from click.testing import CliRunner

from scriptforge.backend import BackendKind
from scriptforge.cli import main
from scriptforge.config import load_config


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, data_dir, *args):
    result = runner.invoke(main, ["--data-dir", str(data_dir), "--mock", *args])
    assert result.exit_code == 0, result.output
    return result


# --- config --------------------------------------------------------------------


def test_config_defaults():
    config = load_config(None)
    assert config.service.port == 8040
    assert config.service.lease_ttl_seconds == 1800.0
    assert config.synthesis.min_paragraphs == 2


def test_config_file_parsing(tmp_path):
    ini = tmp_path / "forge.ini"
    ini.write_text(
        """[dialect]
heading_markers = INT. | EXT. | 场景：
cue_max_length = 24

[aliases]
MAYA = MAIA | MAYA R

[filter]
min_dialogue_blocks = 1
noise_patterns = SUBTITLE | 宣传
noise_ratio_threshold = 0.4

[backend.teacher]
kind = remote_api
model_name = teacher-large
endpoint = http://example.test/v1
temperature = 0.5

[service]
port = 9999

[synthesis]
lexicon_language = zh

[corpus]
series_allowlist = alpha | beta
""",
        encoding="utf-8",
    )
    config = load_config(str(ini))
    assert config.dialect.heading_markers == ["INT.", "EXT.", "场景："]
    assert config.dialect.cue_max_length == 24
    assert config.dialect.name_alias_map == {"maya": ["MAIA", "MAYA R"]} or \
        config.dialect.name_alias_map == {"MAYA": ["MAIA", "MAYA R"]}
    assert config.rules.min_dialogue_blocks == 1
    teacher = config.profile("teacher")
    assert teacher.backend_kind is BackendKind.REMOTE_API
    assert teacher.temperature == 0.5
    assert config.service.port == 9999
    assert config.series_allowlist == ["alpha", "beta"]
    assert "心想" in config.lexicon()


def test_config_missing_file_raises():
    with pytest.raises(FileNotFoundError):
        load_config("/nonexistent/forge.ini")


def test_config_overrides():
    config = load_config(None, overrides={"service.port": "7001"})
    assert config.service.port == 7001


# --- CLI -----------------------------------------------------------------------


def test_cli_pipeline(runner, tmp_path, corpus_dir):
    data = tmp_path / "data"
    out = invoke(runner, data, "ingest", str(corpus_dir))
    assert json.loads(out.output)["ingested"] == 10

    out = invoke(runner, data, "synth", "--profile", "mock")
    summary = json.loads(out.output)
    assert summary["state_counts"] == {"pending_human": 10}

    out = invoke(runner, data, "filter")
    assert json.loads(out.output) == {"filtered": 0}  # synth already ran the auto stage


def test_cli_generate(runner, tmp_path):
    brief = {
        "outline": "Maya confronts Jonas about the ledger in the study.",
        "previous_context": "series opening",
        "character_profiles": [
            {"name": "Maya", "background": "archivist", "personality": "sharp",
             "relationships": "sister of Jonas"},
            {"name": "Jonas", "background": "clerk", "personality": "anxious",
             "relationships": "brother of Maya"},
        ],
        "metadata": ["Focus on what Maya wants in this scene."],
    }
    brief_path = tmp_path / "brief.json"
    brief_path.write_text(json.dumps(brief), encoding="utf-8")
    out = invoke(runner, tmp_path / "data", "generate", str(brief_path))
    body = json.loads(out.output)
    assert body["state"] == "ok"
    run_dir = tmp_path / "data" / "runs" / body["run_id"]
    assert (run_dir / "screenplay.txt").exists()


def test_cli_set_override(runner, tmp_path):
    result = runner.invoke(
        main,
        ["--data-dir", str(tmp_path / "d"), "--mock",
         "--set", "filter.min_dialogue_blocks=99", "ingest", str(tmp_path)],
    )
    # no screenplay files: ingest succeeds with zero scenes
    assert result.exit_code == 0, result.output


def test_cli_export_roundtrip(runner, tmp_path, corpus_dir):
    data = tmp_path / "data"
    invoke(runner, data, "ingest", str(corpus_dir))
    invoke(runner, data, "synth", "--profile", "mock")

    # approve everything through the review queue, then export
    from scriptforge.config import load_config as lc
    from scriptforge.service.context import ServiceContext
    from scriptforge.errors import QueueEmpty

    ctx = ServiceContext(lc(None), data_dir=str(data), mock=True)
    try:
        while True:
            pair, _ = ctx.review_queue.next("rev")
            ctx.review_queue.submit_verdict(pair.pair_id, "approve", "rev")
    except QueueEmpty:
        pass
    finally:
        ctx.close()

    out_path = tmp_path / "sft.jsonl"
    out = invoke(runner, data, "export", str(out_path))
    assert json.loads(out.output)["rows"] == 10
    rows = [json.loads(l) for l in out_path.read_text().splitlines()]
    assert all(r["mask_boundary"] == len(r["prompt"]) for r in rows)

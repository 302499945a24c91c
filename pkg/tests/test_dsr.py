import json
import os

import pytest

from scriptforge.backend import (
    BackendKind,
    BackendProfile,
    CompletionCache,
    CompletionClient,
    MockRule,
    default_catalog,
)
from scriptforge.corpus import parse_screenplay
from scriptforge.dsr import (
    parse_stage1_output,
    run_dsr,
    run_end_to_end,
    stage1_generate,
    stage2_convert,
    end_to_end_generate,
    validate_screenplay,
)
from scriptforge.errors import UnparseableScreenplay, UnparseableStage1
from scriptforge.mocking import build_default_mock_rules
from scriptforge.synthesis import Novel
from scriptforge.synthesis.forward import default_lexicon

from .conftest import make_brief

MOCK = BackendProfile(backend_kind=BackendKind.MOCK, model_name="m")

STAGE1_TEXT = """<directives>
Exposition Strategy: Hold the reveal.
Narrative Pacing: Slow build.
Character Action: Maya paces.
Character Emotion: Quiet dread.
</directives>
<novel>
First paragraph.

Second paragraph.
</novel>
"""


def client(tmp_path, rules=None):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    return CompletionClient(cache, mock_rules=rules or build_default_mock_rules())


# --- stage-1 parsing -----------------------------------------------------------


def test_parse_stage1_well_formed():
    out = parse_stage1_output(STAGE1_TEXT)
    assert out.directives.is_complete()
    assert out.novel.paragraphs == ["First paragraph.", "Second paragraph."]
    assert out.parse_diagnostics == []


def test_parse_stage1_unclosed_novel():
    out = parse_stage1_output(STAGE1_TEXT.replace("</novel>", ""))
    assert out.novel.paragraphs == ["First paragraph.", "Second paragraph."]
    assert "unclosed_novel" in out.parse_diagnostics


def test_parse_stage1_untagged_novel():
    text = STAGE1_TEXT.replace("<novel>\n", "").replace("</novel>", "")
    out = parse_stage1_output(text)
    assert out.novel.paragraphs[0] == "First paragraph."
    assert "untagged_novel" in out.parse_diagnostics


def test_parse_stage1_rejects_garbage():
    with pytest.raises(UnparseableStage1):
        parse_stage1_output("no blocks at all")
    with pytest.raises(UnparseableStage1):
        parse_stage1_output("   ")


def test_stage1_generate_retry_on_format_error(tmp_path):
    calls = []

    class CountingRule(MockRule):
        def apply(self, prompt):
            calls.append(prompt)
            # first call malformed, retry (with reminder suffix) well-formed
            return "garbage" if len(calls) == 1 else STAGE1_TEXT

    c = client(tmp_path, rules=[CountingRule(r".", "")])
    out = stage1_generate(make_brief(), MOCK, c, default_catalog())
    assert len(calls) == 2
    assert calls[1] != calls[0]  # retry prompt carries the format reminder
    assert "format_retry" in out.parse_diagnostics
    assert out.novel.paragraphs


# --- stage isolation -------------------------------------------------------------


def test_stage2_sees_only_brief_and_novel(tmp_path):
    """Stage 2's prompt must carry the structured input and the novel, and
    nothing from stage 1's chain-of-thought directives."""
    captured = []

    class Capture(MockRule):
        def apply(self, prompt):
            captured.append(prompt)
            return "INT. STUDY - NIGHT\n\nMaya sets down the lamp.\n\nMAYA\nTalk.\n"

    novel = Novel(paragraphs=["Maya confronts Jonas over the ledger."])
    result = stage2_convert(novel, make_brief(), MOCK, client(tmp_path, [Capture(r".", "")]),
                            default_catalog())
    assert len(captured) == 1
    prompt = captured[0]
    assert "Maya confronts Jonas over the ledger." in prompt
    assert "<directives>" not in prompt and "Exposition Strategy" not in prompt
    # the novel is the final content of the prompt
    assert prompt.rstrip().endswith("Maya confronts Jonas over the ledger.")
    assert result.scene.heading.setting == "STUDY"


def test_stage2_rejects_unparseable_output(tmp_path):
    c = client(tmp_path, [MockRule(r".", "not a screenplay at all")])
    with pytest.raises(UnparseableScreenplay):
        stage2_convert(Novel(paragraphs=["x"]), make_brief(), MOCK, c, default_catalog())


def test_end_to_end_single_call_no_directives(tmp_path):
    captured = []

    class Capture(MockRule):
        def apply(self, prompt):
            captured.append(prompt)
            return "INT. STUDY - NIGHT\n\nMAYA\nNow or never.\n"

    result = end_to_end_generate(make_brief(), MOCK, client(tmp_path, [Capture(r".", "")]),
                                 default_catalog())
    assert len(captured) == 1
    assert "<directives>" not in captured[0]
    assert result.scene.dialogue_count() == 1


# --- output validation -------------------------------------------------------------


def scene_from(text):
    return parse_screenplay(text)[0]


def test_validation_passes_clean_scene():
    scene = scene_from("INT. A - DAY\n\nShe opens the door.\n\nMAYA\nCome in.\n")
    report = validate_screenplay(scene, roster=["MAYA"], lexicon=default_lexicon("en"))
    assert report.overall


def test_validation_flags_off_roster_speaker():
    scene = scene_from("INT. A - DAY\n\nGHOST\nBoo indeed.\n")
    report = validate_screenplay(scene, roster=["MAYA"], lexicon=default_lexicon("en"))
    assert not report.overall
    failed = [c.check_id for c in report.checks if not c.passed and c.hard]
    assert "speakers_on_roster" in failed


def test_validation_flags_interiority_in_action():
    scene = scene_from("INT. A - DAY\n\nShe felt a wave of regret.\n\nMAYA\nFine.\n")
    report = validate_screenplay(scene, roster=["MAYA"], lexicon=default_lexicon("en"))
    failed = [c.check_id for c in report.checks if not c.passed and c.hard]
    assert "no_interiority_in_action" in failed


def test_validation_requires_dialogue():
    scene = scene_from("INT. A - DAY\n\nNothing is said.\n")
    report = validate_screenplay(scene, roster=None, lexicon=None)
    failed = [c.check_id for c in report.checks if not c.passed and c.hard]
    assert "has_dialogue" in failed


# --- runs ------------------------------------------------------------------------


def test_run_dsr_persists_artifacts(tmp_path):
    runs_dir = str(tmp_path / "runs")
    run = run_dsr(make_brief(), MOCK, MOCK, client(tmp_path), default_catalog(),
                  runs_dir=runs_dir, lexicon=default_lexicon("en"))
    assert run.state == "ok"
    d = os.path.join(runs_dir, run.run_id)
    for name in ["input.json", "stage1_raw.txt", "stage1_parsed.json", "screenplay.txt",
                 "scene.jsonl", "validation.json", "digests.json", "run.json"]:
        assert os.path.exists(os.path.join(d, name)), name
    digests = json.load(open(os.path.join(d, "digests.json")))
    assert len(digests["completion_digests"]) >= 2  # at least one per stage


def test_run_end_to_end_has_no_stage1(tmp_path):
    runs_dir = str(tmp_path / "runs")
    run = run_end_to_end(make_brief(), MOCK, client(tmp_path), default_catalog(),
                         runs_dir=runs_dir, lexicon=default_lexicon("en"))
    assert run.state == "ok"
    assert run.stage1 is None
    d = os.path.join(runs_dir, run.run_id)
    assert not os.path.exists(os.path.join(d, "stage1_raw.txt"))
    assert os.path.exists(os.path.join(d, "screenplay.txt"))


def test_run_dsr_persists_failures(tmp_path):
    runs_dir = str(tmp_path / "runs")
    bad = client(tmp_path, [MockRule(r".", "broken output with no blocks")])
    with pytest.raises(UnparseableStage1):
        run_dsr(make_brief(), MOCK, MOCK, bad, default_catalog(), runs_dir=runs_dir)
    run_dirs = os.listdir(runs_dir)
    assert len(run_dirs) == 1
    run_record = json.load(open(os.path.join(runs_dir, run_dirs[0], "run.json")))
    assert run_record["state"] == "failed"
    assert run_record["error"]

import http.server
import json
import os
import threading

import pytest

from scriptforge.backend import (
    BackendKind,
    BackendProfile,
    CompletionCache,
    CompletionClient,
    MockRule,
    PromptTemplate,
    RetryPolicy,
    TemplateCatalog,
    default_catalog,
    render_prompt,
    request_digest,
)
from scriptforge.backend.templates import parse_template_file
from scriptforge.errors import (
    BackendUnavailable,
    MissingSlot,
    ReplayMiss,
    ResponseTooLong,
    UnknownSlot,
)


# --- templates -------------------------------------------------------------


def test_render_fills_slots():
    t = PromptTemplate(name="t", body="Hello {who}, from {origin}.",
                       required_slots=frozenset({"who", "origin"}), language_tag="en")
    assert render_prompt(t, {"who": "you", "origin": "here"}) == "Hello you, from here."


def test_render_missing_slot():
    t = PromptTemplate(name="t", body="Hello {who}.", required_slots=frozenset({"who"}),
                       language_tag="en")
    with pytest.raises(MissingSlot):
        render_prompt(t, {})


def test_render_unknown_slot():
    t = PromptTemplate(name="t", body="Hello {who}.", required_slots=frozenset({"who"}),
                       language_tag="en")
    with pytest.raises(UnknownSlot):
        render_prompt(t, {"who": "x", "extra": "y"})


def test_template_declared_slots_must_match_body():
    t = PromptTemplate(name="t", body="Hello {who}.", required_slots=frozenset({"who", "gone"}),
                       language_tag="en")
    with pytest.raises(ValueError):
        t.validate()


def test_parse_template_file():
    t = parse_template_file("---\nname: x\nlanguage: en\nslots: a, b\n---\nBody {a} {b}\n")
    assert t.name == "x" and t.required_slots == {"a", "b"}


def test_default_catalog_loads_and_validates():
    catalog = default_catalog()
    names = catalog.names()
    for required in [
        "reverse_scene_outline",
        "reverse_previous_context",
        "reverse_character_profiles",
        "cot_exposition_strategy",
        "cot_narrative_pacing",
        "cot_character_action_emotion",
        "forward_novel",
        "reverse_novel",
        "stage1_novel_generation",
        "stage2_screenplay_conversion",
        "end_to_end_generation",
    ]:
        assert required in names
    for name in names:
        catalog[name].validate()


def test_stage2_template_puts_novel_last():
    t = default_catalog()["stage2_screenplay_conversion"]
    assert t.body.rstrip().endswith("{novel}")
    assert t.body.index("{structured_input}") < t.body.index("{novel}")


# --- digests and cache -------------------------------------------------------


def test_digest_is_deterministic_and_sensitive():
    base = request_digest("p", "m", 0.7, 0.9, 1000)
    assert base == request_digest("p", "m", 0.7, 0.9, 1000)
    assert base != request_digest("q", "m", 0.7, 0.9, 1000)
    assert base != request_digest("p", "m", 0.8, 0.9, 1000)
    assert base != request_digest("p", "n", 0.7, 0.9, 1000)


def test_cache_survives_reopen(tmp_path):
    path = str(tmp_path / "c.jsonl")
    cache = CompletionCache(path)
    cache.append("d1", "hello", 5)
    again = CompletionCache(path)
    rec = again.lookup("d1")
    assert rec is not None and rec.response_text == "hello"
    assert "d1" in again and len(again) == 1


# --- client: mock / replay / remote ------------------------------------------


def mock_profile(**kw):
    return BackendProfile(backend_kind=BackendKind.MOCK, model_name="m", **kw)


def test_mock_rule_backreference_expansion(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, mock_rules=[MockRule(r"say: (.+)", r"echo \1")])
    assert client.complete(mock_profile(), "please say: hi") == "echo hi"


def test_mock_falls_through_rules_in_order(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(
        cache,
        mock_rules=[MockRule(r"alpha", "first"), MockRule(r".", "fallback")],
    )
    assert client.complete(mock_profile(), "alpha beta") == "first"
    assert client.complete(mock_profile(), "zzz") == "fallback"


def test_mock_appends_to_cache(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, mock_rules=[MockRule(r".", "out")])
    profile = mock_profile()
    client.complete(profile, "x")
    assert cache.lookup(profile.digest_for("x")).response_text == "out"


def test_defaults_temperature_and_top_p():
    p = BackendProfile(backend_kind=BackendKind.MOCK, model_name="m")
    assert p.temperature == 0.7 and p.top_p == 0.9


def test_response_too_long(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, mock_rules=[MockRule(r".", "x" * 100)])
    with pytest.raises(ResponseTooLong):
        client.complete(mock_profile(max_output_chars=10), "p")


def test_replay_hit_and_miss(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, mock_rules=[MockRule(r".", "cached answer")])
    mock = mock_profile()
    client.complete(mock, "the prompt")
    replay = BackendProfile(backend_kind=BackendKind.REPLAY, model_name="m")
    assert client.complete(replay, "the prompt") == "cached answer"
    with pytest.raises(ReplayMiss):
        client.complete(replay, "never asked")


def test_replay_does_not_grow_cache(tmp_path):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, mock_rules=[MockRule(r".", "v")])
    client.complete(mock_profile(), "p")
    before = len(cache)
    client.complete(BackendProfile(backend_kind=BackendKind.REPLAY, model_name="m"), "p")
    assert len(cache) == before


class FlakyHandler(http.server.BaseHTTPRequestHandler):
    failures_left = 2

    def do_POST(self):
        length = int(self.headers["Content-Length"])
        body = json.loads(self.rfile.read(length))
        if FlakyHandler.failures_left > 0:
            FlakyHandler.failures_left -= 1
            self.send_response(500)
            self.end_headers()
            return
        payload = json.dumps({"text": f"served:{body['prompt']}"}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *a):
        pass


@pytest.fixture
def flaky_server():
    FlakyHandler.failures_left = 2
    server = http.server.HTTPServer(("127.0.0.1", 0), FlakyHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/complete"
    server.shutdown()


def test_remote_retries_then_succeeds(tmp_path, flaky_server):
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    sleeps = []
    client = CompletionClient(cache, sleep=sleeps.append)
    profile = BackendProfile(
        backend_kind=BackendKind.REMOTE_API,
        model_name="m",
        endpoint=flaky_server,
        retry_policy=RetryPolicy(max_attempts=3, backoff_base_ms=10),
    )
    assert client.complete(profile, "ping") == "served:ping"
    assert len(sleeps) == 2  # two failures, two backoffs
    assert sleeps[1] > sleeps[0]  # exponential
    assert cache.lookup(profile.digest_for("ping")) is not None


def test_remote_gives_up_after_max_attempts(tmp_path, flaky_server):
    FlakyHandler.failures_left = 99
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache, sleep=lambda s: None)
    profile = BackendProfile(
        backend_kind=BackendKind.REMOTE_API,
        model_name="m",
        endpoint=flaky_server,
        retry_policy=RetryPolicy(max_attempts=2, backoff_base_ms=1),
    )
    with pytest.raises(BackendUnavailable):
        client.complete(profile, "ping")


def test_remote_requires_endpoint(tmp_path, monkeypatch):
    monkeypatch.delenv("SCRIPTFORGE_API_URL", raising=False)
    cache = CompletionCache(str(tmp_path / "c.jsonl"))
    client = CompletionClient(cache)
    profile = BackendProfile(backend_kind=BackendKind.REMOTE_API, model_name="m")
    with pytest.raises(BackendUnavailable):
        client.complete(profile, "p")

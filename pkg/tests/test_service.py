import json
import subprocess
import sys
import threading
import textwrap

import pytest
from fastapi.testclient import TestClient

from scriptforge.config import load_config
from scriptforge.errors import NotLeased, QueueEmpty
from scriptforge.service import JobState, ReviewQueue, ServiceContext, create_app
from scriptforge.storage import Store
from scriptforge.synthesis import FilterState

OP = {"X-Role": "operator"}
RA = {"X-Role": "rater"}


@pytest.fixture
def api(mock_context):
    app = create_app(mock_context)
    with TestClient(app) as client:
        yield client, app


def run_pipeline(client, app, corpus_dir):
    r = client.post("/jobs", json={"kind": "ingest",
                                   "params": {"corpus_dir": str(corpus_dir)}}, headers=OP)
    app.state.jobs.wait(r.json()["job_id"])
    r = client.post("/jobs", json={"kind": "synthesize", "params": {"profile": "mock"}},
                    headers=OP)
    return app.state.jobs.wait(r.json()["job_id"])


# --- storage durability ----------------------------------------------------------


def test_store_round_trip_and_versions(tmp_path):
    path = str(tmp_path / "s.jsonl")
    store = Store(path)
    store.put("k", "a", {"v": 1})
    store.put("k", "a", {"v": 2})
    store.put("k", "b", {"v": 9})
    reopened = Store(path)
    assert reopened.get("k", "a").payload == {"v": 2}
    assert reopened.get("k", "a").version == 2
    assert {r.key for r in reopened.list("k")} == {"a", "b"}


KILL_SCRIPT = textwrap.dedent("""
    import os, sys
    from scriptforge.storage import Store
    store = Store(sys.argv[1])
    store.put("k", "committed", {"n": 1})
    os._exit(9)  # simulate a crash immediately after the acknowledged write
""")


def test_acknowledged_write_survives_process_kill(tmp_path):
    path = str(tmp_path / "s.jsonl")
    proc = subprocess.run([sys.executable, "-c", KILL_SCRIPT, path])
    assert proc.returncode == 9
    store = Store(path)
    assert store.get("k", "committed").payload == {"n": 1}


def test_store_skips_torn_trailing_record(tmp_path):
    path = str(tmp_path / "s.jsonl")
    store = Store(path)
    store.put("k", "good", {"n": 1})
    store.close()
    with open(path, "a", encoding="utf-8") as fh:
        fh.write('{"record_kind": "k", "key": "torn", "payl')  # interrupted write
    reopened = Store(path)
    assert reopened.get("k", "good") is not None
    assert reopened.get("k", "torn") is None


# --- review queue leases -----------------------------------------------------------


def leased_queue(mock_context, corpus_dir, ttl=1800.0, clock=None):
    app = create_app(mock_context)
    client = TestClient(app)
    run_pipeline(client, app, corpus_dir)
    kwargs = {"lease_ttl_seconds": ttl}
    if clock:
        kwargs["clock"] = clock
    return ReviewQueue(mock_context.pairs, **kwargs)


def test_concurrent_reviewers_get_distinct_pairs(mock_context, corpus_dir):
    queue = leased_queue(mock_context, corpus_dir)
    results = {}
    barrier = threading.Barrier(2)

    def grab(name):
        barrier.wait()
        pair, _ = queue.next(name)
        results[name] = pair.pair_id

    threads = [threading.Thread(target=grab, args=(f"rev{i}",)) for i in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results.values())) == 2


def test_lease_expiry_frees_pair(mock_context, corpus_dir):
    now = [0.0]
    queue = leased_queue(mock_context, corpus_dir, ttl=10.0, clock=lambda: now[0])
    first, _ = queue.next("rev1")
    taken = {first.pair_id}
    # drain the rest so only expiry can free anything
    try:
        while True:
            p, _ = queue.next("rev1")
            taken.add(p.pair_id)
    except QueueEmpty:
        pass
    with pytest.raises(QueueEmpty):
        queue.next("rev2")
    now[0] = 11.0
    again, _ = queue.next("rev2")
    assert again.pair_id in taken


def test_verdict_requires_live_lease_by_same_reviewer(mock_context, corpus_dir):
    queue = leased_queue(mock_context, corpus_dir)
    pair, _ = queue.next("rev1")
    with pytest.raises(NotLeased):
        queue.submit_verdict(pair.pair_id, "approve", "someone-else")
    queue.submit_verdict(pair.pair_id, "approve", "rev1")
    assert mock_context.pairs.get(pair.pair_id).filter_state is FilterState.APPROVED


# --- jobs ---------------------------------------------------------------------------


def test_job_lifecycle_and_progress(api, corpus_dir):
    client, app = api
    job = run_pipeline(client, app, corpus_dir)
    assert job.state is JobState.DONE
    assert job.progress["completed"] == job.progress["total"] > 0
    body = client.get(f"/jobs/{job.job_id}", headers=OP).json()
    assert body["state"] == "done"


def test_job_idempotency_key(api, corpus_dir):
    client, _ = api
    req = {"kind": "ingest", "params": {"corpus_dir": str(corpus_dir)},
           "idempotency_key": "once"}
    first = client.post("/jobs", json=req, headers=OP).json()
    second = client.post("/jobs", json=req, headers=OP).json()
    assert first["job_id"] == second["job_id"]


def test_job_invalid_params(api):
    client, _ = api
    r = client.post("/jobs", json={"kind": "ingest", "params": {}}, headers=OP)
    assert r.status_code == 422
    r = client.post("/jobs", json={"kind": "bogus", "params": {}}, headers=OP)
    assert r.status_code == 422


def test_failed_job_reports_error(api, tmp_path):
    client, app = api
    r = client.post("/jobs", json={"kind": "ingest",
                                   "params": {"corpus_dir": str(tmp_path / "missing")}},
                    headers=OP)
    job = app.state.jobs.wait(r.json()["job_id"])
    assert job.state is JobState.FAILED
    assert job.error


# --- authz ---------------------------------------------------------------------------


def test_missing_role_rejected(api):
    client, _ = api
    assert client.get("/jobs/x").status_code == 401
    assert client.get("/jobs/x", headers={"X-Role": "intruder"}).status_code == 401


def test_rater_cannot_run_jobs_or_read_reports(api):
    client, _ = api
    r = client.post("/jobs", json={"kind": "filter", "params": {}}, headers=RA)
    assert r.status_code == 403
    assert client.get("/eval/sessions/x/report", headers=RA).status_code == 403
    assert client.get("/runs/x", headers=RA).status_code == 403


def test_review_flow_over_api(api, corpus_dir):
    client, app = api
    run_pipeline(client, app, corpus_dir)
    seen = set()
    while True:
        r = client.get("/review/next", params={"reviewer_id": "rev1"}, headers=RA)
        if r.status_code == 404:
            break
        body = r.json()
        assert body["pair_id"] not in seen
        seen.add(body["pair_id"])
        assert body["novel"]["paragraphs"]
        v = client.post(f"/review/{body['pair_id']}/verdict",
                        json={"action": "approve", "reviewer_id": "rev1"}, headers=RA)
        assert v.status_code == 200
        assert v.json()["filter_state"] == "approved"
    assert len(seen) == 10


def test_verdict_without_lease_conflicts(api, corpus_dir):
    client, app = api
    run_pipeline(client, app, corpus_dir)
    body = client.get("/review/next", params={"reviewer_id": "rev1"}, headers=RA).json()
    r = client.post(f"/review/{body['pair_id']}/verdict",
                    json={"action": "approve", "reviewer_id": "rev2"}, headers=RA)
    assert r.status_code == 409


# --- eval sessions over the API ---------------------------------------------------------


SESSION_REQ = {
    "scenes": [
        {"scene_id": "s1", "outputs": {"human": "first version", "ours": "second version"}},
        {"scene_id": "s2", "outputs": {"human": "third version", "ours": "fourth version"}},
    ],
    "human_system": "human",
    "baseline_system": None,
    "seed": 3,
}


def test_rater_task_payload_is_blinded(api):
    client, _ = api
    sid = client.post("/eval/sessions", json=SESSION_REQ, headers=OP).json()["session_id"]
    task = client.get(f"/eval/sessions/{sid}/next", params={"rater_id": "r1"},
                      headers=RA)
    flat = task.text
    assert task.status_code == 200
    assert "human" not in flat and "ours" not in flat and "label_map" not in flat


def test_full_session_produces_complete_report(api):
    client, _ = api
    sid = client.post("/eval/sessions", json=SESSION_REQ, headers=OP).json()["session_id"]
    for rater in ["r1", "r2"]:
        while True:
            task = client.get(f"/eval/sessions/{sid}/next", params={"rater_id": rater},
                              headers=RA).json()
            if task.get("done"):
                break
            labels = [c["label"] for c in task["candidates"]]
            for i, label in enumerate(labels):
                client.post(f"/eval/sessions/{sid}/rating",
                            json={"scene_id": task["scene_id"], "label": label,
                                  "score": 7 + i, "rater_id": rater}, headers=RA)
            client.post(f"/eval/sessions/{sid}/comparison",
                        json={"scene_id": task["scene_id"], "choice": labels[0],
                              "rater_id": rater}, headers=RA)
    report = client.get(f"/eval/sessions/{sid}/report", headers=OP).json()
    assert report["complete"]
    assert set(report["systems"]) == {"human", "ours"}
    ours = report["systems"]["ours"]
    assert ours["ratio_to_human_pct"] is not None


def test_mid_session_report_flagged_incomplete(api):
    client, _ = api
    sid = client.post("/eval/sessions", json=SESSION_REQ, headers=OP).json()["session_id"]
    task = client.get(f"/eval/sessions/{sid}/next", params={"rater_id": "r1"},
                      headers=RA).json()
    label = task["candidates"][0]["label"]
    client.post(f"/eval/sessions/{sid}/rating",
                json={"scene_id": task["scene_id"], "label": label, "score": 6,
                      "rater_id": "r1"}, headers=RA)
    report = client.get(f"/eval/sessions/{sid}/report", headers=OP).json()
    assert report["complete"] is False


def test_rating_validation_over_api(api):
    client, _ = api
    sid = client.post("/eval/sessions", json=SESSION_REQ, headers=OP).json()["session_id"]
    r = client.post(f"/eval/sessions/{sid}/rating",
                    json={"scene_id": "s1", "label": "ZZ", "score": 6, "rater_id": "r1"},
                    headers=RA)
    assert r.status_code == 422
    task = client.get(f"/eval/sessions/{sid}/next", params={"rater_id": "r1"},
                      headers=RA).json()
    label = task["candidates"][0]["label"]
    r = client.post(f"/eval/sessions/{sid}/rating",
                    json={"scene_id": task["scene_id"], "label": label, "score": 13,
                          "rater_id": "r1"}, headers=RA)
    assert r.status_code == 422

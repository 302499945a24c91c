"""Digest-keyed completion cache enabling deterministic replay.

Append-only JSONL of completion records plus a sidecar digest index.
The digest is a pure function of the rendered prompt and the decoding
fields of the profile; retry metadata and timestamps are excluded so
replay lookups are stable.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Optional


def request_digest(
    prompt: str,
    model_name: str,
    temperature: float,
    top_p: float,
    max_output_chars: int,
) -> str:
    key = json.dumps(
        {
            "prompt": prompt,
            "model_name": model_name,
            "temperature": temperature,
            "top_p": top_p,
            "max_output_chars": max_output_chars,
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(key.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CompletionRecord:
    request_digest: str
    response_text: str
    latency_ms: int
    timestamp: float

    def to_dict(self) -> dict:
        return {
            "request_digest": self.request_digest,
            "response_text": self.response_text,
            "latency_ms": self.latency_ms,
            "timestamp": self.timestamp,
        }


class CompletionCache:
    def __init__(self, path: str):
        self.path = path
        self.index_path = path + ".index"
        self._lock = threading.Lock()
        self._by_digest: dict[str, CompletionRecord] = {}
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    d = json.loads(line)
                    rec = CompletionRecord(
                        request_digest=d["request_digest"],
                        response_text=d["response_text"],
                        latency_ms=d["latency_ms"],
                        timestamp=d["timestamp"],
                    )
                    self._by_digest[rec.request_digest] = rec

    def append(self, digest: str, response_text: str, latency_ms: int) -> CompletionRecord:
        rec = CompletionRecord(
            request_digest=digest,
            response_text=response_text,
            latency_ms=latency_ms,
            timestamp=time.time(),
        )
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec.to_dict(), ensure_ascii=False) + "\n")
            with open(self.index_path, "a", encoding="utf-8") as fh:
                fh.write(digest + "\n")
            self._by_digest[digest] = rec
        return rec

    def lookup(self, digest: str) -> Optional[CompletionRecord]:
        with self._lock:
            return self._by_digest.get(digest)

    def __contains__(self, digest: str) -> bool:
        return self.lookup(digest) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._by_digest)

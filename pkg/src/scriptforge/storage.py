"""Embedded durable record store.

Single append-only JSONL file with per-record fsync. Each append is an
atomic commit; a record acknowledged as committed survives a hard process
kill. Reads are served from an in-memory index rebuilt on open. Mutations
funnel through a single writer lock.
"""
from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Any, Iterator, Optional


@dataclass(frozen=True)
class StoreRecord:
    record_kind: str
    key: str
    payload: Any
    version: int
    created_at: float

    def to_dict(self) -> dict:
        return {
            "record_kind": self.record_kind,
            "key": self.key,
            "payload": self.payload,
            "version": self.version,
            "created_at": self.created_at,
        }


class Store:
    def __init__(self, path: str):
        self.path = path
        self._lock = threading.RLock()
        # latest record per (kind, key); full chain kept on disk
        self._latest: dict[tuple[str, str], StoreRecord] = {}
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        self._load()
        self._fh = open(self.path, "a", encoding="utf-8")

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            lines = fh.readlines()
        for i, line in enumerate(lines):
            line = line.strip()
            if not line:
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError:
                if i == len(lines) - 1:
                    # torn trailing record from an interrupted append; the
                    # write was never acknowledged, so drop it
                    break
                raise
            rec = StoreRecord(
                record_kind=d["record_kind"],
                key=d["key"],
                payload=d["payload"],
                version=d["version"],
                created_at=d["created_at"],
            )
            self._latest[(rec.record_kind, rec.key)] = rec

    def put(self, record_kind: str, key: str, payload: Any) -> StoreRecord:
        """Append a new version and fsync before acknowledging."""
        with self._lock:
            prev = self._latest.get((record_kind, key))
            rec = StoreRecord(
                record_kind=record_kind,
                key=key,
                payload=payload,
                version=(prev.version + 1) if prev else 1,
                created_at=time.time(),
            )
            self._fh.write(json.dumps(rec.to_dict(), ensure_ascii=False) + "\n")
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self._latest[(record_kind, key)] = rec
            return rec

    def get(self, record_kind: str, key: str) -> Optional[StoreRecord]:
        with self._lock:
            return self._latest.get((record_kind, key))

    def list(self, record_kind: str) -> list[StoreRecord]:
        with self._lock:
            return sorted(
                (r for (k, _), r in self._latest.items() if k == record_kind),
                key=lambda r: r.key,
            )

    def keys(self, record_kind: str) -> list[str]:
        return [r.key for r in self.list(record_kind)]

    def __iter__(self) -> Iterator[StoreRecord]:
        with self._lock:
            return iter(list(self._latest.values()))

    def close(self) -> None:
        with self._lock:
            self._fh.close()

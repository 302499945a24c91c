"""Human review queue: durable pair records plus in-memory leases."""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable, Optional

from ..errors import NotLeased, QueueEmpty
from ..storage import Store
from ..synthesis import FilterState, TrainingPair
from ..synthesis.statemachine import AutoCheckConfig, apply_human_verdict

PAIR_KIND = "pair"


@dataclass
class Lease:
    pair_id: str
    reviewer_id: str
    expires_at: float


class PairRepository:
    def __init__(self, store: Store):
        self.store = store

    def save(self, pair: TrainingPair) -> None:
        self.store.put(PAIR_KIND, pair.pair_id, pair.to_dict())

    def get(self, pair_id: str) -> Optional[TrainingPair]:
        rec = self.store.get(PAIR_KIND, pair_id)
        return TrainingPair.from_dict(rec.payload) if rec else None

    def all(self) -> list[TrainingPair]:
        return [TrainingPair.from_dict(r.payload) for r in self.store.list(PAIR_KIND)]

    def in_state(self, state: FilterState) -> list[TrainingPair]:
        return [p for p in self.all() if p.filter_state is state]


class ReviewQueue:
    """Leases pending_human pairs to reviewers. At most one live lease per
    pair; expired leases free the pair for re-lease. Leases are process
    state; pairs themselves are durable."""

    def __init__(
        self,
        pairs: PairRepository,
        lease_ttl_seconds: float = 1800.0,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.pairs = pairs
        self.lease_ttl = lease_ttl_seconds
        self.clock = clock
        self._leases: dict[str, Lease] = {}
        self._lock = threading.Lock()

    def _live(self, pair_id: str) -> Optional[Lease]:
        lease = self._leases.get(pair_id)
        if lease and lease.expires_at > self.clock():
            return lease
        return None

    def next(self, reviewer_id: str) -> tuple[TrainingPair, Lease]:
        with self._lock:
            for pair in self.pairs.in_state(FilterState.PENDING_HUMAN):
                if self._live(pair.pair_id):
                    continue
                lease = Lease(
                    pair_id=pair.pair_id,
                    reviewer_id=reviewer_id,
                    expires_at=self.clock() + self.lease_ttl,
                )
                self._leases[pair.pair_id] = lease
                return pair, lease
            raise QueueEmpty("no pending_human pairs available for lease")

    def submit_verdict(
        self,
        pair_id: str,
        verdict: str,
        reviewer_id: str,
        edit_payload: dict | None = None,
        reject_reason: str | None = None,
        auto_config: AutoCheckConfig | None = None,
    ) -> TrainingPair:
        with self._lock:
            lease = self._live(pair_id)
            if lease is None or lease.reviewer_id != reviewer_id:
                raise NotLeased(f"reviewer {reviewer_id!r} holds no live lease on {pair_id}")
            pair = self.pairs.get(pair_id)
            assert pair is not None
            apply_human_verdict(
                pair,
                verdict,
                reviewer_id,
                edit_payload=edit_payload,
                reject_reason=reject_reason,
                config=auto_config,
            )
            self.pairs.save(pair)
            del self._leases[pair_id]
            return pair

"""Pluggable completion backends: remote HTTP, rule-based mock, and replay.

The remote wire shape is a single chat-completion style POST carrying
{model, prompt, temperature, top_p}; the response is parsed for one
"text" field. Endpoint and auth token fall back to the
SCRIPTFORGE_API_URL / SCRIPTFORGE_API_KEY environment variables.
"""
from __future__ import annotations

import os
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import httpx

from ..errors import BackendUnavailable, ReplayMiss, ResponseTooLong
from .cache import CompletionCache, request_digest

ENV_API_URL = "SCRIPTFORGE_API_URL"
ENV_API_KEY = "SCRIPTFORGE_API_KEY"


class BackendKind(str, Enum):
    REMOTE_API = "remote_api"
    MOCK = "mock"
    REPLAY = "replay"


@dataclass(frozen=True)
class RetryPolicy:
    max_attempts: int = 3
    backoff_base_ms: int = 100


@dataclass(frozen=True)
class BackendProfile:
    backend_kind: BackendKind
    model_name: str
    endpoint: Optional[str] = None
    temperature: float = 0.7
    top_p: float = 0.9
    max_output_chars: int = 200_000
    retry_policy: RetryPolicy = field(default_factory=RetryPolicy)

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if not 0 < self.top_p <= 1:
            raise ValueError("top_p must be in (0, 1]")

    def digest_for(self, prompt: str) -> str:
        return request_digest(
            prompt, self.model_name, self.temperature, self.top_p, self.max_output_chars
        )


@dataclass(frozen=True)
class MockRule:
    """First matching pattern wins; the response template may reference
    regex groups via backslash expansion (\\1, \\g<name>)."""

    pattern: str
    response: str

    def apply(self, prompt: str) -> Optional[str]:
        m = re.search(self.pattern, prompt, re.DOTALL)
        if m is None:
            return None
        return m.expand(self.response)


class CompletionClient:
    """Routes complete() calls by profile kind and records every
    non-replay completion in the cache."""

    def __init__(
        self,
        cache: CompletionCache,
        mock_rules: list[MockRule] | None = None,
        sleep: Callable[[float], None] = time.sleep,
        transport: httpx.BaseTransport | None = None,
    ):
        self.cache = cache
        self.mock_rules = mock_rules or []
        self._sleep = sleep
        self._transport = transport

    def complete(self, profile: BackendProfile, prompt: str) -> str:
        digest = profile.digest_for(prompt)
        if profile.backend_kind is BackendKind.REPLAY:
            rec = self.cache.lookup(digest)
            if rec is None:
                raise ReplayMiss(digest)
            return rec.response_text

        start = time.monotonic()
        if profile.backend_kind is BackendKind.MOCK:
            text = self._mock_complete(prompt)
        else:
            text = self._remote_complete(profile, prompt)
        if len(text) > profile.max_output_chars:
            raise ResponseTooLong(
                f"response length {len(text)} exceeds {profile.max_output_chars}"
            )
        latency_ms = int((time.monotonic() - start) * 1000)
        self.cache.append(digest, text, latency_ms)
        return text

    def _mock_complete(self, prompt: str) -> str:
        for rule in self.mock_rules:
            out = rule.apply(prompt)
            if out is not None:
                return out
        raise BackendUnavailable("no mock rule matched the prompt")

    def _remote_complete(self, profile: BackendProfile, prompt: str) -> str:
        endpoint = profile.endpoint or os.environ.get(ENV_API_URL)
        if not endpoint:
            raise BackendUnavailable("no endpoint configured and SCRIPTFORGE_API_URL unset")
        headers = {}
        api_key = os.environ.get(ENV_API_KEY)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        body = {
            "model": profile.model_name,
            "prompt": prompt,
            "temperature": profile.temperature,
            "top_p": profile.top_p,
        }
        policy = profile.retry_policy
        last_error: Exception | None = None
        for attempt in range(policy.max_attempts):
            if attempt:
                self._sleep(policy.backoff_base_ms * (2 ** (attempt - 1)) / 1000.0)
            try:
                with httpx.Client(transport=self._transport, timeout=120.0) as client:
                    resp = client.post(endpoint, json=body, headers=headers)
                if resp.status_code == 200:
                    return resp.json()["text"]
                last_error = BackendUnavailable(f"HTTP {resp.status_code}")
            except httpx.HTTPError as exc:
                last_error = exc
        raise BackendUnavailable(
            f"remote backend failed after {policy.max_attempts} attempts: {last_error}"
        )

"""HTTP chat backend used by remote classifiers and extractors.

Native wire format (``flavor="native"``)::

    POST <endpoint>
    {"model": "<id>", "messages": [{"role": "user", "content": "..."}],
     "temperature": 0.0, "response_schema": {...} | null}

    200 {"content": "<text>", "usage": {"input_tokens": 12, "output_tokens": 3}}

``flavor="openai"`` speaks the chat-completions shape instead: the schema goes
out as ``response_format.json_schema`` and the text comes back from
``choices[0].message.content`` with ``usage.prompt_tokens/completion_tokens``.

Credentials are read from the environment variable named by
``ModelRef.api_key_env`` and sent as a bearer token.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import httpx


class BackendError(RuntimeError):
    """A failed call. ``kind`` is one of transport, timeout, http, response."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


@dataclass(frozen=True)
class ModelRef:
    name: str
    endpoint: str
    api_key_env: str | None = None
    flavor: str = "native"
    timeout_s: float = 60.0

    def __post_init__(self):
        if self.flavor not in ("native", "openai"):
            raise ValueError(f"unknown backend flavor {self.flavor!r}")


@dataclass(frozen=True)
class Telemetry:
    latency_s: float
    input_tokens: int | None = None
    output_tokens: int | None = None


@dataclass(frozen=True)
class Completion:
    text: str
    telemetry: Telemetry = field(default_factory=lambda: Telemetry(0.0))


class ChatBackend:
    def __init__(self, model: ModelRef, client: httpx.Client | None = None):
        self.model = model
        self._client = client or httpx.Client(timeout=model.timeout_s)

    def _headers(self) -> dict[str, str]:
        headers = {"content-type": "application/json"}
        if self.model.api_key_env:
            key = os.environ.get(self.model.api_key_env)
            if key:
                headers["authorization"] = f"Bearer {key}"
        return headers

    def _payload(self, messages, temperature, response_schema) -> dict:
        payload: dict[str, object] = {
            "model": self.model.name,
            "messages": messages,
            "temperature": temperature,
        }
        if self.model.flavor == "openai":
            if response_schema is not None:
                payload["response_format"] = {
                    "type": "json_schema",
                    "json_schema": {"name": "syllogism_structure", "schema": response_schema, "strict": True},
                }
        else:
            payload["response_schema"] = response_schema
        return payload

    def complete(
        self,
        messages: list[dict[str, str]],
        temperature: float = 0.0,
        response_schema: dict | None = None,
    ) -> Completion:
        payload = self._payload(messages, temperature, response_schema)
        start = time.perf_counter()
        try:
            resp = self._client.post(
                self.model.endpoint, json=payload, headers=self._headers(), timeout=self.model.timeout_s
            )
        except httpx.TimeoutException as exc:
            raise BackendError("timeout", str(exc)) from exc
        except httpx.HTTPError as exc:
            raise BackendError("transport", str(exc)) from exc
        latency = time.perf_counter() - start
        if resp.status_code >= 400:
            raise BackendError("http", f"status {resp.status_code}")
        try:
            data = resp.json()
        except ValueError as exc:
            raise BackendError("response", "body is not JSON") from exc
        if not isinstance(data, dict):
            raise BackendError("response", "body is not a JSON object")
        if self.model.flavor == "openai":
            choices = data.get("choices") or []
            message = (choices[0].get("message") or {}) if choices else {}
            text = message.get("content")
            usage = data.get("usage") or {}
            tokens = usage.get("prompt_tokens"), usage.get("completion_tokens")
        else:
            text = data.get("content")
            usage = data.get("usage") or {}
            tokens = usage.get("input_tokens"), usage.get("output_tokens")
        if not isinstance(text, str):
            raise BackendError("response", "missing text content")
        return Completion(text, Telemetry(latency, *tokens))

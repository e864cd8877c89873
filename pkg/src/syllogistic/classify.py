"""Binary validity classifiers: remote LLM calls and seeded simulated stand-ins."""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field

from .backend import BackendError, ChatBackend, ModelRef, Telemetry
from .harness.dataset import DatasetInstance
from .prompts import PromptKind, render_prompt

_TOKEN = {"true": 1, "valid": 1, "false": 0, "invalid": 0}
_ANSWER_RE = re.compile(r"answer\s*:\s*\**\s*(true|false)\b", re.IGNORECASE)
_ANY_RE = re.compile(r"\b(true|false|valid|invalid)\b", re.IGNORECASE)

# Stage numbers recorded on a Vote.
STAGE_ANSWER, STAGE_LAST_LINE, STAGE_LAST_TOKEN, STAGE_DEFAULT = 1, 2, 3, 4


@dataclass(frozen=True)
class Vote:
    value: int
    raw_response: str = ""
    stage: int | None = None
    error: str | None = None
    telemetry: Telemetry | None = None

    @property
    def parse_failed(self) -> bool:
        return self.error is None and self.stage == STAGE_DEFAULT


def parse_response(text: str) -> Vote:
    """Map a model response to a binary vote.

    Stages, first hit wins: an explicit ``ANSWER: true|false`` (last one), a
    last nonempty line that is just a verdict word, the last verdict word
    anywhere, and finally the invalid default.
    """
    text = text or ""
    hits = _ANSWER_RE.findall(text)
    if hits:
        return Vote(_TOKEN[hits[-1].lower()], text, STAGE_ANSWER)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines:
        last = re.sub(r"^[\W_]+|[\W_]+$", "", lines[-1].strip()).lower()
        if last in _TOKEN:
            return Vote(_TOKEN[last], text, STAGE_LAST_LINE)
    hits = _ANY_RE.findall(text)
    if hits:
        return Vote(_TOKEN[hits[-1].lower()], text, STAGE_LAST_TOKEN)
    return Vote(0, text, STAGE_DEFAULT)


@dataclass(frozen=True)
class SimulatedBiasParams:
    structural_accuracy: float = 0.9
    believability_pull: float = 0.0
    seed: int = 0
    # Classifiers sharing a bias_seed get pulled on the same instances.
    bias_seed: int | None = None

    def __post_init__(self):
        for name in ("structural_accuracy", "believability_pull"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class ClassifierConfig:
    id: str
    prompt: PromptKind = PromptKind.ZERO_SHOT
    temperature: float = 0.0
    model: ModelRef | None = None
    simulated: SimulatedBiasParams | None = None
    retries: int = 2
    backoff_s: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "prompt", PromptKind(self.prompt))
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if (self.model is None) == (self.simulated is None):
            raise ValueError(f"classifier {self.id!r} needs exactly one of model / simulated")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")


def classify_simulated(params: SimulatedBiasParams, instance: DatasetInstance, oracle_valid: bool) -> Vote:
    rng = random.Random(f"sim:{params.seed}:{instance.id}")
    u_struct = rng.random()
    if params.bias_seed is None:
        u_pull = rng.random()
    else:
        u_pull = random.Random(f"bias:{params.bias_seed}:{instance.id}").random()
    value = oracle_valid if u_struct < params.structural_accuracy else not oracle_valid
    if u_pull < params.believability_pull:
        value = instance.believable
    return Vote(int(value), stage=None)


def classify_remote(
    cfg: ClassifierConfig,
    text: str,
    backend: ChatBackend,
    sleep=time.sleep,
) -> Vote:
    """Render, call, parse. Exhausted retries give an error-flagged invalid vote."""
    messages = [{"role": "user", "content": render_prompt(cfg.prompt, text)}]
    last_error = None
    for attempt in range(cfg.retries + 1):
        if attempt:
            sleep(cfg.backoff_s * 2 ** (attempt - 1))
        try:
            completion = backend.complete(messages, temperature=cfg.temperature)
        except BackendError as exc:
            last_error = exc
            continue
        vote = parse_response(completion.text)
        return Vote(vote.value, vote.raw_response, vote.stage, None, completion.telemetry)
    return Vote(0, "", None, error=str(last_error))


class Classifier:
    """A configured classifier; ``predict`` maps one instance to a vote."""

    def __init__(self, cfg: ClassifierConfig, backend: ChatBackend | None = None):
        self.cfg = cfg
        self.id = cfg.id
        if cfg.model is not None and backend is None:
            backend = ChatBackend(cfg.model)
        self.backend = backend

    def predict(self, instance: DatasetInstance) -> Vote:
        if self.cfg.simulated is not None:
            return classify_simulated(self.cfg.simulated, instance, instance.valid)
        return classify_remote(self.cfg, instance.text, self.backend)

    def __repr__(self) -> str:
        return f"Classifier({self.id!r})"


@dataclass
class VoteCounts:
    """Per-classifier tallies of parse stages and transport errors."""

    stages: dict[int, int] = field(default_factory=dict)
    errors: int = 0

    def add(self, vote: Vote) -> None:
        if vote.error is not None:
            self.errors += 1
        elif vote.stage is not None:
            self.stages[vote.stage] = self.stages.get(vote.stage, 0) + 1

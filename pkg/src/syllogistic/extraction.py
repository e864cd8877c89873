"""Structure extraction with ordered fallback over extractors.

An extractor has an ``id`` and an ``extract_raw(text)`` method returning either
a :class:`SyllogismStructure`, a raw record in the extraction JSON shape, or a
``(record, Telemetry)`` pair.  Raw records are validated strictly; nothing is
repaired.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .backend import BackendError, ChatBackend, ModelRef, Telemetry
from .logic import Proposition, PropositionType, StructureError, SyllogismStructure
from .parser import ParseError, term_variants, normalize_term, parse_or_raise
from .prompts import EXTRACTION_SCHEMA, render_extraction_prompt

RULE_BASED = "rule-based"


class ExtractionError(ValueError):
    """``kind`` is malformed, term-mismatch, transport or a parser failure code."""

    def __init__(self, kind: str, message: str = "", telemetry: Telemetry | None = None):
        super().__init__(f"{kind}: {message}" if message else kind)
        self.kind = kind
        # Set when the call completed but its output was unusable.
        self.telemetry = telemetry


@dataclass(frozen=True)
class ExtractorConfig:
    extractors: tuple[str, ...] = (RULE_BASED,)
    attempts: int = 1

    def __post_init__(self):
        object.__setattr__(self, "extractors", tuple(self.extractors))
        if not self.extractors:
            raise ValueError("extraction chain is empty")
        if self.attempts < 1:
            raise ValueError("attempts must be >= 1")


@dataclass(frozen=True)
class ExtractionOutcome:
    structure: SyllogismStructure | None
    extractor_id: str | None
    attempts: int
    failures: tuple[str, ...] = ()
    plausibility: str | None = None
    telemetry: tuple[Telemetry, ...] = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return self.structure is not None


_PROP_KEYS = {"type", "subject", "predicate"}
_TOP_KEYS = {"terms", "premise1", "premise2", "conclusion"}


def validate_structure(candidate) -> SyllogismStructure:
    if not isinstance(candidate, dict) or set(candidate) != _TOP_KEYS:
        raise ExtractionError("malformed", f"expected keys {sorted(_TOP_KEYS)}")
    terms = candidate["terms"]
    if not isinstance(terms, list) or len(terms) != 3 or not all(isinstance(t, str) for t in terms):
        raise ExtractionError("malformed", "terms must be a list of three strings")
    canon = [normalize_term(t) for t in terms]
    if len(set(canon)) != 3 or not all(canon):
        raise ExtractionError("malformed", f"terms are not three distinct terms: {terms!r}")

    def resolve(raw) -> str:
        if not isinstance(raw, str):
            raise ExtractionError("malformed", "subject/predicate must be strings")
        t = normalize_term(raw)
        if t in canon:
            return t
        matches = [c for c in canon if term_variants(c) & term_variants(t)]
        if len(matches) != 1:
            raise ExtractionError("term-mismatch", f"{raw!r} is not one of {terms!r}")
        return matches[0]

    props = []
    for key in ("premise1", "premise2", "conclusion"):
        rec = candidate[key]
        if not isinstance(rec, dict) or set(rec) != _PROP_KEYS:
            raise ExtractionError("malformed", f"{key} must have keys {sorted(_PROP_KEYS)}")
        if rec["type"] not in ("A", "E", "I", "O"):
            raise ExtractionError("malformed", f"{key} has type {rec['type']!r}")
        try:
            props.append(Proposition(PropositionType(rec["type"]), resolve(rec["subject"]), resolve(rec["predicate"])))
        except StructureError as exc:
            raise ExtractionError("term-mismatch", str(exc)) from None
    try:
        return SyllogismStructure(tuple(canon), *props)
    except StructureError as exc:
        raise ExtractionError("term-mismatch", str(exc)) from None


class RuleBasedExtractor:
    id = RULE_BASED

    def extract_raw(self, text: str) -> SyllogismStructure:
        try:
            return parse_or_raise(text)
        except ParseError as exc:
            raise ExtractionError(exc.reason.value, exc.detail) from None


def remote_extract(text: str, backend: ChatBackend, temperature: float = 0.0) -> tuple[dict, Telemetry]:
    """One schema-constrained extraction call; returns the raw record and telemetry."""
    messages = [{"role": "user", "content": render_extraction_prompt(text)}]
    try:
        completion = backend.complete(messages, temperature=temperature, response_schema=EXTRACTION_SCHEMA)
    except BackendError as exc:
        raise ExtractionError("transport", str(exc)) from exc
    try:
        record = json.loads(completion.text)
    except json.JSONDecodeError:
        raise ExtractionError("malformed", "response is not JSON", completion.telemetry) from None
    if not isinstance(record, dict):
        raise ExtractionError("malformed", "response is not a JSON object", completion.telemetry)
    return record, completion.telemetry


class RemoteExtractor:
    def __init__(self, model: ModelRef, backend: ChatBackend | None = None):
        self.id = model.name
        self.backend = backend or ChatBackend(model)

    def extract_raw(self, text: str) -> tuple[dict, Telemetry]:
        return remote_extract(text, self.backend)


def build_chain(cfg: ExtractorConfig, models: dict[str, ModelRef] | None = None) -> list:
    models = models or {}
    chain = []
    for ext_id in cfg.extractors:
        if ext_id == RULE_BASED:
            chain.append(RuleBasedExtractor())
        elif ext_id in models:
            chain.append(RemoteExtractor(models[ext_id]))
        else:
            raise ValueError(f"no model configured for extractor {ext_id!r}")
    return chain


def extract(text: str, chain, attempts: int = 1, plausibility: str | None = None) -> ExtractionOutcome:
    """Try each extractor in order (``attempts`` times each); first valid structure wins."""
    if not chain:
        raise ValueError("extraction chain is empty")
    tries = 0
    failures: list[str] = []
    telemetry: list[Telemetry] = []
    for extractor in chain:
        for _ in range(attempts):
            tries += 1
            try:
                raw = extractor.extract_raw(text)
                if isinstance(raw, tuple):
                    raw, tel = raw
                    telemetry.append(tel)
                structure = raw if isinstance(raw, SyllogismStructure) else validate_structure(raw)
            except ExtractionError as exc:
                failures.append(f"{extractor.id}:{exc.kind}")
                if exc.telemetry is not None:
                    telemetry.append(exc.telemetry)
                continue
            return ExtractionOutcome(structure, extractor.id, tries, tuple(failures), plausibility, tuple(telemetry))
    return ExtractionOutcome(None, None, tries, tuple(failures), plausibility, tuple(telemetry))

"""Run configuration: one JSON file that fully determines an offline run.

Example::

    {
      "synthetic": {"seed": 0, "size": 480},
      "classifiers": [
        {"id": "sim-a/zero-shot", "prompt": "zero-shot",
         "simulated": {"structural_accuracy": 0.9, "believability_pull": 0.2, "seed": 1}},
        {"id": "remote/simple-cot", "prompt": "simple-cot", "model": "my-model"}
      ],
      "models": {"my-model": {"name": "my-model", "endpoint": "http://localhost:8000/chat",
                              "api_key_env": "MY_API_KEY", "flavor": "native"}},
      "extraction": {"extractors": ["rule-based"], "attempts": 1},
      "mode": "subject-import",
      "strategies": ["ensemble", "tiebreaker-1", "weighted", "veto", "confidence-3", "top-3", "solver"],
      "tau": 1, "ce_metric": "congruence-gap", "seed": 0,
      "folds": 5, "inner": 200, "ensemble_size": 5, "stratified": false,
      "solver": "native", "parallelism": 1, "output_dir": "runs/example"
    }

Secrets never go in the file: a model names the environment variable holding its key.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from ..backend import ModelRef
from ..classify import Classifier, ClassifierConfig, SimulatedBiasParams
from ..extraction import ExtractorConfig, build_chain
from ..fusion import ALL_STRATEGIES, FusionStrategy
from ..logic import SemanticsMode
from ..metrics import CeMetricKind
from ..prompts import PromptKind


class ConfigError(ValueError):
    pass


# Three simulated "models" crossed with the four prompts.
_SIM_MODELS = {"sim-a": 0.90, "sim-b": 0.86, "sim-c": 0.88}
_SIM_PULL = {
    PromptKind.ZERO_SHOT: 0.25,
    PromptKind.FEW_SHOT: 0.20,
    PromptKind.FEW_SHOT_COT: 0.30,
    PromptKind.SIMPLE_COT: 0.15,
}


def default_candidates(seed: int = 0) -> list[dict]:
    out = []
    for i, (model, acc) in enumerate(_SIM_MODELS.items()):
        for j, (prompt, pull) in enumerate(_SIM_PULL.items()):
            out.append({
                "id": f"{model}/{prompt.value}",
                "prompt": prompt.value,
                "simulated": {
                    "structural_accuracy": acc,
                    "believability_pull": pull,
                    "seed": seed * 1000 + i * 10 + j,
                },
            })
    return out


@dataclass
class RunConfig:
    dataset: str | None = None
    synthetic: dict | None = None
    lexicon: str | None = None
    classifiers: list[dict] = field(default_factory=list)
    models: dict[str, dict] = field(default_factory=dict)
    extraction: dict = field(default_factory=lambda: {"extractors": ["rule-based"], "attempts": 1})
    mode: str = SemanticsMode.SUBJECT_IMPORT.value
    strategies: list[str] = field(default_factory=lambda: [s.name for s in ALL_STRATEGIES])
    tau: int = 1
    ce_metric: str = CeMetricKind.CONGRUENCE_GAP.value
    seed: int = 0
    folds: int = 5
    inner: int = 200
    ensemble_size: int = 5
    stratified: bool = False
    solver: str = "native"
    parallelism: int = 1
    output_dir: str = "runs/latest"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.resolve()
        return cfg

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def resolve(self) -> None:
        """Fill defaults and validate everything before any work starts."""
        if self.dataset is None and self.synthetic is None:
            self.synthetic = {"seed": self.seed, "size": None}
        if self.dataset is not None and self.synthetic is not None:
            raise ConfigError("give either dataset or synthetic, not both")
        if self.synthetic is not None:
            extra = set(self.synthetic) - {"seed", "size"}
            if extra:
                raise ConfigError(f"unknown synthetic keys: {sorted(extra)}")
            self.synthetic = {"seed": self.synthetic.get("seed", self.seed), "size": self.synthetic.get("size")}
        if not self.classifiers:
            self.classifiers = default_candidates(self.seed)
        try:
            SemanticsMode(self.mode)
            CeMetricKind(self.ce_metric)
            for name in self.strategies:
                FusionStrategy.parse(name)
            extra = set(self.extraction) - {"extractors", "attempts"}
            if extra:
                raise ConfigError(f"unknown extraction keys: {sorted(extra)}")
            self.build_chain()
            self.classifier_configs()
            self.model_refs()
        except (ValueError, TypeError, KeyError) as exc:
            raise ConfigError(str(exc)) from None
        if f"tiebreaker-{self.tau}" not in self.strategies:
            raise ConfigError(f"strategies must include tiebreaker-{self.tau}")
        if self.solver not in ("native", "external"):
            raise ConfigError(f"solver must be native or external, got {self.solver!r}")
        if self.ce_metric == CeMetricKind.EXTERNAL.value:
            raise ConfigError("external content-effect values cannot be computed inside a run")
        for name in ("folds", "inner", "ensemble_size", "parallelism", "tau"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ConfigError(f"{name} must be a positive integer")
        if self.ensemble_size > len(self.classifiers):
            raise ConfigError("ensemble_size exceeds the number of candidate classifiers")
        ids = [c["id"] for c in self.classifiers]
        if len(set(ids)) != len(ids):
            raise ConfigError("classifier ids must be unique")

    def model_refs(self) -> dict[str, ModelRef]:
        return {key: ModelRef(**spec) for key, spec in self.models.items()}

    def classifier_configs(self) -> list[ClassifierConfig]:
        models = self.model_refs()
        out = []
        for spec in self.classifiers:
            spec = dict(spec)
            extra = set(spec) - {"id", "prompt", "temperature", "model", "simulated", "retries", "backoff_s"}
            if extra:
                raise ConfigError(f"unknown classifier keys: {sorted(extra)}")
            if "model" in spec:
                if spec["model"] not in models:
                    raise ConfigError(f"classifier {spec['id']!r} names unknown model {spec['model']!r}")
                spec["model"] = models[spec["model"]]
            if "simulated" in spec:
                spec["simulated"] = SimulatedBiasParams(**spec["simulated"])
            out.append(ClassifierConfig(**spec))
        return out

    def build_classifiers(self) -> list[Classifier]:
        return [Classifier(c) for c in self.classifier_configs()]

    def build_chain(self):
        ext = ExtractorConfig(tuple(self.extraction["extractors"]), self.extraction.get("attempts", 1))
        return build_chain(ext, self.model_refs()), ext.attempts

    def strategy_objects(self) -> list[FusionStrategy]:
        return [FusionStrategy.parse(n) for n in self.strategies]

"""Accuracy, subgroup accuracy, content effect and the combined score."""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass, field

from .harness.dataset import DatasetInstance, Subgroup


class CeMetricKind(str, enum.Enum):
    CONGRUENCE_GAP = "congruence-gap"
    PAIR_FLIP_RATE = "pair-flip-rate"
    EXTERNAL = "external"


def accuracy(preds, golds) -> float:
    preds, golds = list(preds), list(golds)
    if not preds or len(preds) != len(golds):
        raise ValueError(f"need equal nonempty inputs, got {len(preds)} and {len(golds)}")
    return 100.0 * sum(int(p) == int(g) for p, g in zip(preds, golds)) / len(preds)


def subgroup_accuracy(preds, golds, plausibility) -> dict[Subgroup, float | None]:
    """Accuracy per validity x plausibility cell; None where a cell is empty."""
    buckets: dict[Subgroup, list[tuple[int, int]]] = {g: [] for g in Subgroup}
    for p, g, pl in zip(preds, golds, plausibility, strict=True):
        believable = pl == "believable" if isinstance(pl, str) else bool(pl)
        buckets[Subgroup.of(bool(g), believable)].append((p, g))
    return {
        group: accuracy(*zip(*rows)) if rows else None
        for group, rows in buckets.items()
    }


def _congruence_gap(preds, instances) -> float:
    congruent, incongruent = [], []
    for p, inst in zip(preds, instances, strict=True):
        (congruent if inst.subgroup.congruent else incongruent).append((p, inst.valid))
    if not congruent or not incongruent:
        raise ValueError("congruence gap needs both congruent and incongruent instances")
    return abs(accuracy(*zip(*congruent)) - accuracy(*zip(*incongruent)))


def _pair_flip_rate(preds, instances) -> float:
    by_pair: dict[str, dict[str, int]] = {}
    for p, inst in zip(preds, instances, strict=True):
        if inst.pair_id is None:
            continue
        by_pair.setdefault(inst.pair_id, {})[inst.plausibility] = int(p)
    pairs = [v for v in by_pair.values() if len(v) == 2]
    if not pairs:
        raise ValueError("pair flip rate needs believable/unbelievable pairs sharing a pair_id")
    return 100.0 * sum(v["believable"] != v["unbelievable"] for v in pairs) / len(pairs)


def content_effect(
    preds,
    instances: list[DatasetInstance],
    kind: CeMetricKind = CeMetricKind.CONGRUENCE_GAP,
    external: float | None = None,
) -> float:
    """Nonnegative content effect of ``preds`` on ``instances``.

    congruence-gap: |acc(VB+IU) - acc(VU+IB)| in points.
    pair-flip-rate: percent of believable/unbelievable twins predicted differently.
    external: ``external`` passed through (scores computed elsewhere).
    """
    kind = CeMetricKind(kind)
    preds = list(preds)
    if kind is CeMetricKind.EXTERNAL:
        if external is None or external < 0:
            raise ValueError("external content effect must be a nonnegative number")
        return float(external)
    if kind is CeMetricKind.PAIR_FLIP_RATE:
        return _pair_flip_rate(preds, instances)
    return _congruence_gap(preds, instances)


def combined_score(acc: float, ce: float) -> float:
    if ce < 0:
        raise ValueError(f"content effect must be >= 0, got {ce}")
    return acc / (1.0 + math.log(1.0 + ce))


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    subgroup_accuracy: dict[Subgroup, float | None]
    content_effect: float
    combined_score: float
    ce_metric: CeMetricKind = CeMetricKind.CONGRUENCE_GAP
    n: int = 0

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "accuracy": self.accuracy,
            "content_effect": self.content_effect,
            "combined_score": self.combined_score,
            "ce_metric": self.ce_metric.value,
            "subgroup_accuracy": {g.value: v for g, v in self.subgroup_accuracy.items()},
        }

    @classmethod
    def from_record(cls, rec: dict) -> "MetricsReport":
        return cls(
            rec["accuracy"],
            {Subgroup(k): v for k, v in rec["subgroup_accuracy"].items()},
            rec["content_effect"],
            rec["combined_score"],
            CeMetricKind(rec["ce_metric"]),
            rec.get("n", 0),
        )


def evaluate(preds, instances, kind=CeMetricKind.CONGRUENCE_GAP, external=None) -> MetricsReport:
    preds = [int(p) for p in preds]
    golds = [int(i.valid) for i in instances]
    acc = accuracy(preds, golds)
    ce = content_effect(preds, instances, kind, external)
    return MetricsReport(
        acc,
        subgroup_accuracy(preds, golds, [i.plausibility for i in instances]),
        ce,
        combined_score(acc, ce),
        CeMetricKind(kind),
        len(preds),
    )


@dataclass(frozen=True)
class Summary:
    mean: float
    std: float
    n: int

    def __str__(self) -> str:
        return f"{self.mean:.2f}±{self.std:.2f}"


@dataclass(frozen=True)
class FoldSummary:
    accuracy: Summary
    content_effect: Summary
    combined_score: Summary
    subgroup_accuracy: dict[Subgroup, Summary | None] = field(default_factory=dict)


def summarize(values) -> Summary:
    values = [float(v) for v in values]
    if not values:
        raise ValueError("nothing to summarize")
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return Summary(statistics.fmean(values), std, len(values))


def aggregate_folds(reports: list[MetricsReport]) -> FoldSummary:
    """Mean and sample std per field.

    The combined score is the mean of per-fold scores, not the score of the
    mean accuracy and mean content effect; the two differ because the score is
    nonlinear in the content effect.
    """
    if not reports:
        raise ValueError("need at least one fold")
    subgroups = {}
    for g in Subgroup:
        vals = [r.subgroup_accuracy.get(g) for r in reports]
        vals = [v for v in vals if v is not None]
        subgroups[g] = summarize(vals) if vals else None
    return FoldSummary(
        summarize(r.accuracy for r in reports),
        summarize(r.content_effect for r in reports),
        summarize(r.combined_score for r in reports),
        subgroups,
    )

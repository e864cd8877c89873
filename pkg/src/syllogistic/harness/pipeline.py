"""Per-instance pipeline: ensemble votes, solver verdict, fusion, and run-level statistics."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..classify import Classifier, Vote
from ..extraction import RuleBasedExtractor, extract
from ..fusion import ALL_STRATEGIES, FusionStrategy, StrategyKind, VoteRecord, aggregate, fuse, tiebreaker
from ..logic import SemanticsMode, Verdict, decide_validity, premise_models
from ..metrics import CeMetricKind, MetricsReport, evaluate
from ..smtlib import external_verdict
from .dataset import DatasetInstance, Subgroup

log = logging.getLogger(__name__)

# Why the solver produced no verdict.
OK, EXTRACTION_FAILED, DEGENERATE, SOLVER_UNKNOWN = "ok", "extraction-failed", "degenerate-premises", "solver-unknown"


@dataclass(frozen=True)
class InstanceResult:
    id: str
    subgroup: Subgroup
    gold: int
    votes: tuple[Vote, ...]
    record: VoteRecord
    verdict: Verdict
    verdict_reason: str
    extractor: str | None
    fused: dict[str, int]
    extraction_telemetry: tuple = ()

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "subgroup": self.subgroup.value,
            "gold": self.gold,
            "votes": list(self.record.votes),
            "margin": self.record.margin,
            "majority": self.record.majority,
            "verdict": self.verdict.value,
            "verdict_reason": self.verdict_reason,
            "extractor": self.extractor,
            "fused": dict(self.fused),
        }


@dataclass(frozen=True)
class TiebreakerStats:
    tau: int
    n_classifiers: int
    total: int
    splits: int
    non_splits: int
    solver_available_on_splits: int
    degenerate_on_splits: int
    degenerate_total: int
    overrides: int
    correct_flips: int
    wrong_flips: int
    correct_tiebreaker: int
    correct_ensemble: int

    def to_record(self) -> dict:
        return dict(self.__dict__)


@dataclass
class RunReport:
    strategies: dict[str, MetricsReport]
    tiebreaker: TiebreakerStats
    coalition: dict[str, dict[str, float]]
    extraction: dict[str, dict[str, float]]
    margin_profile: dict[int, dict[str, int]]
    classifier_ids: list[str]
    parse_stats: dict[str, dict[str, int]] = field(default_factory=dict)
    instances: list[InstanceResult] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "classifiers": list(self.classifier_ids),
            "strategy_order": list(self.strategies),
            "strategies": {k: v.to_record() for k, v in self.strategies.items()},
            "tiebreaker": self.tiebreaker.to_record(),
            "coalition": self.coalition,
            "extraction": self.extraction,
            "margin_profile": {str(k): v for k, v in sorted(self.margin_profile.items())},
            "parse_stats": self.parse_stats,
        }


def solver_verdict(structure, mode: SemanticsMode, solver: str = "native") -> tuple[Verdict, str]:
    if structure is None:
        return Verdict.INDETERMINATE, EXTRACTION_FAILED
    if solver == "external":
        verdict = external_verdict(structure, mode)
        if verdict is Verdict.INDETERMINATE:
            return verdict, DEGENERATE if not premise_models(structure, mode) else SOLVER_UNKNOWN
        return verdict, OK
    verdict = decide_validity(structure, mode)
    return verdict, DEGENERATE if verdict is Verdict.INDETERMINATE else OK


def _evaluate_instance(inst, classifiers, chain, attempts, mode, strategies, solver) -> InstanceResult:
    votes = tuple(c.predict(inst) for c in classifiers)
    record = aggregate(v.value for v in votes)
    outcome = extract(inst.text, chain, attempts, inst.plausibility)
    verdict, reason = solver_verdict(outcome.structure, mode, solver)
    fused = {s.name: fuse(record, verdict, s).prediction for s in strategies}
    return InstanceResult(
        inst.id, inst.subgroup, int(inst.valid), votes, record, verdict, reason, outcome.extractor_id, fused,
        outcome.telemetry,
    )


def evaluate_instances(
    instances,
    classifiers,
    chain=None,
    attempts: int = 1,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    strategies=ALL_STRATEGIES,
    solver: str = "native",
    parallelism: int = 1,
) -> list[InstanceResult]:
    """Results come back in input order regardless of completion order."""
    chain = chain or [RuleBasedExtractor()]

    def work(inst):
        return _evaluate_instance(inst, classifiers, chain, attempts, mode, strategies, solver)

    if parallelism <= 1:
        return [work(inst) for inst in instances]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(work, instances))


def _tiebreaker_stats(results: list[InstanceResult], strategy: FusionStrategy) -> TiebreakerStats:
    name = strategy.name
    splits = [r for r in results if r.record.margin <= strategy.tau]
    overrides = [r for r in results if r.fused[name] != r.record.majority]
    correct_flips = sum(r.fused[name] == r.gold for r in overrides)
    return TiebreakerStats(
        tau=strategy.tau,
        n_classifiers=results[0].record.n if results else 0,
        total=len(results),
        splits=len(splits),
        non_splits=len(results) - len(splits),
        solver_available_on_splits=sum(r.verdict is not Verdict.INDETERMINATE for r in splits),
        degenerate_on_splits=sum(r.verdict_reason == DEGENERATE for r in splits),
        degenerate_total=sum(r.verdict_reason == DEGENERATE for r in results),
        overrides=len(overrides),
        correct_flips=correct_flips,
        wrong_flips=len(overrides) - correct_flips,
        correct_tiebreaker=sum(r.fused[name] == r.gold for r in results),
        correct_ensemble=sum(r.record.majority == r.gold for r in results),
    )


def _coalition(results: list[InstanceResult], ids: list[str]) -> dict[str, dict[str, float]]:
    close = [r for r in results if r.record.margin == 1]
    out = {}
    for i, cid in enumerate(ids):
        minority = sum(r.record.votes[i] != r.record.majority for r in close)
        out[cid] = {
            "minority": minority,
            "margin1": len(close),
            "rate": 100.0 * minority / len(close) if close else None,
        }
    return out


def _extraction(results: list[InstanceResult]) -> dict[str, dict[str, float]]:
    out = {}
    for g in Subgroup:
        rows = [r for r in results if r.subgroup is g]
        failed = sum(r.verdict_reason == EXTRACTION_FAILED for r in rows)
        out[g.value] = {"total": len(rows), "failures": failed, "rate": 100.0 * failed / len(rows) if rows else None}
    return out


def _margin_profile(results: list[InstanceResult]) -> dict[int, dict[str, int]]:
    """Per margin: instances, ensemble errors, and errors on believability-incongruent items."""
    out: dict[int, dict[str, int]] = {}
    for r in results:
        row = out.setdefault(r.record.margin, {"instances": 0, "errors": 0, "incongruent_errors": 0})
        row["instances"] += 1
        if r.record.majority != r.gold:
            row["errors"] += 1
            if not r.subgroup.congruent:
                row["incongruent_errors"] += 1
    return out


def _parse_stats(results: list[InstanceResult], ids: list[str]) -> dict[str, dict[str, int]]:
    out = {}
    for i, cid in enumerate(ids):
        counts = {"stage1": 0, "stage2": 0, "stage3": 0, "default": 0, "errors": 0, "simulated": 0}
        for r in results:
            v = r.votes[i]
            if v.error is not None:
                counts["errors"] += 1
            elif v.stage is None:
                counts["simulated"] += 1
            else:
                counts["default" if v.stage == 4 else f"stage{v.stage}"] += 1
        out[cid] = counts
    return out


def summarize_run(
    results: list[InstanceResult],
    instances: list[DatasetInstance],
    classifier_ids: list[str],
    strategies=ALL_STRATEGIES,
    ce_kind: CeMetricKind = CeMetricKind.CONGRUENCE_GAP,
    tau: int = 1,
) -> RunReport:
    per_strategy = {
        s.name: evaluate([r.fused[s.name] for r in results], instances, ce_kind) for s in strategies
    }
    tb = next((s for s in strategies if s.kind is StrategyKind.TIEBREAKER and s.tau == tau), None)
    if tb is None:
        raise ValueError(f"strategy set must include tiebreaker-{tau}")
    return RunReport(
        strategies=per_strategy,
        tiebreaker=_tiebreaker_stats(results, tb),
        coalition=_coalition(results, classifier_ids),
        extraction=_extraction(results),
        margin_profile=_margin_profile(results),
        classifier_ids=list(classifier_ids),
        parse_stats=_parse_stats(results, classifier_ids),
        instances=results,
    )


def run_pipeline(
    instances: list[DatasetInstance],
    classifiers: list[Classifier],
    strategies=ALL_STRATEGIES,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    chain=None,
    attempts: int = 1,
    ce_kind: CeMetricKind = CeMetricKind.CONGRUENCE_GAP,
    tau: int = 1,
    solver: str = "native",
    parallelism: int = 1,
) -> RunReport:
    """Evaluate ``instances`` with classifiers given in rank order (best first)."""
    strategies = tuple(strategies)
    if not any(s.kind is StrategyKind.TIEBREAKER and s.tau == tau for s in strategies):
        strategies = strategies + (tiebreaker(tau),)
    results = evaluate_instances(instances, classifiers, chain, attempts, mode, strategies, solver, parallelism)
    log.debug("evaluated %d instances", len(results))
    return summarize_run(results, instances, [c.id for c in classifiers], strategies, ce_kind, tau)

"""Nested cross-validation: inner selection of the ensemble, outer evaluation."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..classify import Classifier
from ..fusion import ALL_STRATEGIES
from ..logic import SemanticsMode
from ..metrics import CeMetricKind, MetricsReport, aggregate_folds, evaluate
from .dataset import DatasetInstance
from .folds import Fold, FoldPlan
from .pipeline import RunReport, run_pipeline

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectionResult:
    ranking: tuple[tuple[str, MetricsReport], ...]
    chosen: tuple[str, ...]
    excluded: tuple[str, ...] = ()

    def to_record(self) -> dict:
        return {
            "ranking": [{"id": cid, **rep.to_record()} for cid, rep in self.ranking],
            "chosen": list(self.chosen),
            "excluded": list(self.excluded),
        }


def select_configs(
    inner: list[DatasetInstance],
    candidates: list[Classifier],
    top: int = 5,
    ce_kind: CeMetricKind = CeMetricKind.CONGRUENCE_GAP,
    parallelism: int = 1,
) -> SelectionResult:
    """Score every candidate on the inner subset and keep the ``top`` by combined score."""
    if not inner:
        raise ValueError("inner subset is empty")

    def score(clf):
        votes = [clf.predict(inst) for inst in inner]
        if all(v.error is not None for v in votes):
            return clf.id, None
        return clf.id, evaluate([v.value for v in votes], inner, ce_kind)

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            scored = list(pool.map(score, candidates))
    else:
        scored = [score(c) for c in candidates]
    excluded = tuple(cid for cid, rep in scored if rep is None)
    ranking = sorted(((cid, rep) for cid, rep in scored if rep is not None), key=lambda x: (-x[1].combined_score, x[0]))
    return SelectionResult(tuple(ranking), tuple(cid for cid, _ in ranking[:top]), excluded)


@dataclass
class FoldResult:
    fold: Fold
    selection: SelectionResult
    run: RunReport


def run_fold(
    fold: Fold,
    dataset: list[DatasetInstance],
    candidates: list[Classifier],
    ensemble_size: int = 5,
    strategies=ALL_STRATEGIES,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    chain=None,
    attempts: int = 1,
    ce_kind: CeMetricKind = CeMetricKind.CONGRUENCE_GAP,
    tau: int = 1,
    solver: str = "native",
    parallelism: int = 1,
) -> FoldResult:
    by_id = {inst.id: inst for inst in dataset}
    inner = [by_id[i] for i in fold.inner]
    selection = select_configs(inner, candidates, ensemble_size, ce_kind, parallelism)
    by_clf = {c.id: c for c in candidates}
    ensemble = [by_clf[cid] for cid in selection.chosen]
    evaluation = [by_id[i] for i in fold.evaluation]
    log.info("fold %d: ensemble %s", fold.index, ", ".join(selection.chosen))
    run = run_pipeline(evaluation, ensemble, strategies, mode, chain, attempts, ce_kind, tau, solver, parallelism)
    return FoldResult(fold, selection, run)


def run_cv(plan: FoldPlan, dataset, candidates, **kwargs) -> list[FoldResult]:
    return [run_fold(fold, dataset, candidates, **kwargs) for fold in plan.folds]


def strategy_summaries(results: list[FoldResult]):
    names = list(results[0].run.strategies)
    return {name: aggregate_folds([r.run.strategies[name] for r in results]) for name in names}

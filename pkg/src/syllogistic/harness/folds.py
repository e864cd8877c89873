"""Seeded outer folds with an inner model-selection subset per fold."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dataset import DatasetInstance


@dataclass(frozen=True)
class Fold:
    index: int
    calibration: tuple[str, ...]
    evaluation: tuple[str, ...]
    inner: tuple[str, ...]


@dataclass(frozen=True)
class FoldPlan:
    folds: tuple[Fold, ...]
    seed: int

    def to_record(self) -> dict:
        return {
            "seed": self.seed,
            "folds": [
                {"index": f.index, "evaluation": list(f.evaluation), "inner": list(f.inner)}
                for f in self.folds
            ],
        }


def _chunks(ids: list[str], k: int) -> list[list[str]]:
    size, extra = divmod(len(ids), k)
    out, start = [], 0
    for i in range(k):
        end = start + size + (i < extra)
        out.append(ids[start:end])
        start = end
    return out


def _stratified_chunks(instances: list[DatasetInstance], k: int) -> list[list[str]]:
    out: list[list[str]] = [[] for _ in range(k)]
    by_group: dict = {}
    for inst in instances:
        by_group.setdefault(inst.subgroup, []).append(inst.id)
    slot = 0
    for group in sorted(by_group):
        for id_ in by_group[group]:
            out[slot % k].append(id_)
            slot += 1
    return out


def _stratified_sample(pool: list[DatasetInstance], n: int, rng: random.Random) -> list[str]:
    """Round-robin over shuffled subgroups, so each subgroup gets about n/4 slots."""
    by_group: dict = {}
    for inst in pool:
        by_group.setdefault(inst.subgroup, []).append(inst.id)
    queues = [rng.sample(ids, len(ids)) for _, ids in sorted(by_group.items())]
    out: list[str] = []
    while len(out) < n:
        for q in queues:
            if q and len(out) < n:
                out.append(q.pop())
    return out


def plan_folds(
    dataset: list[DatasetInstance],
    k: int = 5,
    inner: int = 200,
    seed: int = 0,
    stratified: bool = False,
) -> FoldPlan:
    if k < 2:
        raise ValueError("need k >= 2")
    if len(dataset) < k:
        raise ValueError(f"dataset of {len(dataset)} instances cannot be split into {k} folds")
    rng = random.Random(seed)
    shuffled = list(dataset)
    rng.shuffle(shuffled)
    if stratified:
        chunks = _stratified_chunks(shuffled, k)
    else:
        chunks = _chunks([inst.id for inst in shuffled], k)
    by_id = {inst.id: inst for inst in dataset}
    folds = []
    for i, evaluation in enumerate(chunks):
        held = set(evaluation)
        calibration = [inst.id for inst in shuffled if inst.id not in held]
        n_inner = min(inner, len(calibration))
        if stratified:
            inner_ids = _stratified_sample([by_id[c] for c in calibration], n_inner, rng)
        else:
            inner_ids = rng.sample(calibration, n_inner)
        folds.append(Fold(i, tuple(calibration), tuple(evaluation), tuple(inner_ids)))
    return FoldPlan(tuple(folds), seed)

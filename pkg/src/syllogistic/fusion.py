"""Vote aggregation and the fusion strategies that combine votes with a solver verdict."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .logic import Verdict


@dataclass(frozen=True)
class VoteRecord:
    votes: tuple[int, ...]
    sum: int
    margin: int
    majority: int

    @property
    def n(self) -> int:
        return len(self.votes)


def aggregate(votes) -> VoteRecord:
    """Sum, margin ``|2*sum - n|`` and strict majority (exact ties go to invalid)."""
    votes = tuple(int(v) for v in votes)
    if not votes:
        raise ValueError("need at least one vote")
    if any(v not in (0, 1) for v in votes):
        raise ValueError(f"votes must be 0/1, got {votes}")
    total = sum(votes)
    n = len(votes)
    return VoteRecord(votes, total, abs(2 * total - n), int(2 * total > n))


class StrategyKind(str, enum.Enum):
    ENSEMBLE_ONLY = "ensemble"
    TIEBREAKER = "tiebreaker"
    WEIGHTED = "weighted"
    VETO = "veto"
    CONFIDENCE = "confidence"
    TOP_K = "top-k"
    SOLVER_ONLY = "solver"


@dataclass(frozen=True)
class FusionStrategy:
    kind: StrategyKind
    tau: int = 1
    k: int = 3

    def __post_init__(self):
        object.__setattr__(self, "kind", StrategyKind(self.kind))

    @property
    def name(self) -> str:
        if self.kind is StrategyKind.TIEBREAKER:
            return f"tiebreaker-{self.tau}"
        if self.kind is StrategyKind.CONFIDENCE:
            return f"confidence-{self.tau}"
        if self.kind is StrategyKind.TOP_K:
            return f"top-{self.k}"
        return self.kind.value

    @classmethod
    def parse(cls, name: str) -> "FusionStrategy":
        """Inverse of :attr:`name`, e.g. ``tiebreaker-1``, ``top-3``, ``veto``."""
        head, _, num = name.rpartition("-")
        if head == "tiebreaker" and num.isdigit():
            return tiebreaker(int(num))
        if head == "confidence" and num.isdigit():
            return cls(StrategyKind.CONFIDENCE, tau=int(num))
        if head == "top" and num.isdigit():
            return cls(StrategyKind.TOP_K, k=int(num))
        try:
            return cls(StrategyKind(name))
        except ValueError:
            raise ValueError(f"unknown fusion strategy {name!r}") from None


def tiebreaker(tau: int = 1) -> FusionStrategy:
    return FusionStrategy(StrategyKind.TIEBREAKER, tau=tau)


ENSEMBLE_ONLY = FusionStrategy(StrategyKind.ENSEMBLE_ONLY)
TIEBREAKER = tiebreaker(1)
WEIGHTED = FusionStrategy(StrategyKind.WEIGHTED)
VETO = FusionStrategy(StrategyKind.VETO)
CONFIDENCE = FusionStrategy(StrategyKind.CONFIDENCE, tau=3)
TOP_3 = FusionStrategy(StrategyKind.TOP_K, k=3)
SOLVER_ONLY = FusionStrategy(StrategyKind.SOLVER_ONLY)

ALL_STRATEGIES = (ENSEMBLE_ONLY, TIEBREAKER, WEIGHTED, VETO, CONFIDENCE, TOP_3, SOLVER_ONLY)


@dataclass(frozen=True)
class FusedPrediction:
    prediction: int
    source: str  # "ensemble" or "solver"
    margin: int
    solver_verdict: Verdict | None = None


def _ensemble(record: VoteRecord, margin: int | None = None) -> FusedPrediction:
    return FusedPrediction(record.majority, "ensemble", record.margin if margin is None else margin)


def _threshold(record: VoteRecord, solver: Verdict, tau: int) -> FusedPrediction:
    z = solver.as_vote()
    if record.margin <= tau and z is not None:
        return FusedPrediction(z, "solver", record.margin, solver)
    return _ensemble(record)


def fuse(record: VoteRecord, solver: Verdict, strategy: FusionStrategy) -> FusedPrediction:
    """Combine one instance's votes with the solver verdict.

    For top-k the votes must be in classifier-rank order; only the first k count.
    """
    solver = Verdict(solver)
    z = solver.as_vote()
    kind = strategy.kind
    if kind is StrategyKind.ENSEMBLE_ONLY:
        return _ensemble(record)
    if kind in (StrategyKind.TIEBREAKER, StrategyKind.CONFIDENCE):
        return _threshold(record, solver, strategy.tau)
    if kind is StrategyKind.TOP_K:
        return _threshold(aggregate(record.votes[: strategy.k]), solver, 1)
    if kind is StrategyKind.VETO or kind is StrategyKind.SOLVER_ONLY:
        # Identical rules; kept apart because they are reported as separate rows.
        if z is None:
            return _ensemble(record)
        return FusedPrediction(z, "solver", record.margin, solver)
    if kind is StrategyKind.WEIGHTED:
        if z is None:
            return _ensemble(record)
        total, n = record.sum + z, record.n + 1
        if 2 * total == n:
            return _ensemble(record)
        pred = int(2 * total > n)
        return FusedPrediction(pred, "ensemble" if pred == record.majority else "solver", record.margin, solver)
    raise ValueError(f"unhandled strategy {strategy}")

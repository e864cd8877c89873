from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from syllogistic.fusion import (
    ALL_STRATEGIES,
    CONFIDENCE,
    ENSEMBLE_ONLY,
    SOLVER_ONLY,
    TIEBREAKER,
    TOP_3,
    VETO,
    WEIGHTED,
    FusionStrategy,
    StrategyKind,
    aggregate,
    fuse,
    tiebreaker,
)
from syllogistic.logic import Verdict

VECTORS = list(product((0, 1), repeat=5))
VERDICTS = list(Verdict)


def _expected_tiebreaker(votes, verdict, tau=1):
    """Direct reading of the threshold rule."""
    s = sum(votes)
    margin = abs(2 * s - len(votes))
    majority = int(2 * s > len(votes))
    if margin <= tau and verdict is not Verdict.INDETERMINATE:
        return int(verdict is Verdict.VALID)
    return majority


class TestAggregate:
    def test_unanimous(self):
        r = aggregate([1, 1, 1, 1, 1])
        assert (r.sum, r.margin, r.majority) == (5, 5, 1)

    def test_four_one(self):
        assert aggregate([1, 1, 1, 1, 0]).margin == 3

    def test_three_two(self):
        r = aggregate([1, 1, 0, 0, 1])
        assert (r.sum, r.margin, r.majority) == (3, 1, 1)

    def test_even_tie_goes_invalid(self):
        r = aggregate([1, 0])
        assert r.margin == 0 and r.majority == 0

    def test_rejects_bad_votes(self):
        with pytest.raises(ValueError):
            aggregate([1, 2])
        with pytest.raises(ValueError):
            aggregate([])

    def test_margins_for_five(self):
        assert {aggregate(v).margin for v in VECTORS} == {1, 3, 5}


class TestFuse:
    def test_split_defers_to_solver(self):
        out = fuse(aggregate([1, 1, 1, 0, 0]), Verdict.INVALID, TIEBREAKER)
        assert out.prediction == 0 and out.source == "solver"

    def test_wide_margin_keeps_majority(self):
        out = fuse(aggregate([1, 1, 1, 1, 0]), Verdict.INVALID, TIEBREAKER)
        assert out.prediction == 1 and out.source == "ensemble"

    def test_indeterminate_keeps_majority(self):
        out = fuse(aggregate([1, 1, 1, 0, 0]), Verdict.INDETERMINATE, TIEBREAKER)
        assert out.prediction == 1 and out.source == "ensemble"

    def test_weighted_tie_goes_to_ensemble(self):
        out = fuse(aggregate([1, 1, 0, 0, 1]), Verdict.INVALID, WEIGHTED)
        assert out.prediction == 1

    def test_exhaustive(self):
        for votes, verdict in product(VECTORS, VERDICTS):
            r = aggregate(votes)
            z = verdict.as_vote()
            assert fuse(r, verdict, TIEBREAKER).prediction == _expected_tiebreaker(votes, verdict)
            assert fuse(r, verdict, WEIGHTED).prediction == fuse(r, verdict, ENSEMBLE_ONLY).prediction
            assert fuse(r, verdict, ENSEMBLE_ONLY).prediction == r.majority
            assert fuse(r, verdict, SOLVER_ONLY).prediction == (r.majority if z is None else z)
            assert fuse(r, verdict, VETO).prediction == fuse(r, verdict, SOLVER_ONLY).prediction
            assert fuse(r, verdict, CONFIDENCE).prediction == _expected_tiebreaker(votes, verdict, tau=3)
            assert fuse(r, verdict, TOP_3).prediction == _expected_tiebreaker(votes[:3], verdict)

    def test_confidence_superset(self):
        for votes, verdict in product(VECTORS, VERDICTS):
            r = aggregate(votes)
            if fuse(r, verdict, TIEBREAKER).source == "solver":
                assert fuse(r, verdict, CONFIDENCE).source == "solver"

    def test_differs_only_on_close_determinate(self):
        for votes, verdict in product(VECTORS, VERDICTS):
            r = aggregate(votes)
            if fuse(r, verdict, TIEBREAKER).prediction != r.majority:
                assert r.margin <= 1 and verdict is not Verdict.INDETERMINATE


class TestStrategyNames:
    def test_round_trip(self):
        for s in ALL_STRATEGIES:
            assert FusionStrategy.parse(s.name) == s

    def test_names(self):
        assert [s.name for s in ALL_STRATEGIES] == [
            "ensemble", "tiebreaker-1", "weighted", "veto", "confidence-3", "top-3", "solver",
        ]
        assert tiebreaker(2).name == "tiebreaker-2"

    def test_unknown(self):
        with pytest.raises(ValueError):
            FusionStrategy.parse("bagging")

    def test_kind(self):
        assert TIEBREAKER.kind is StrategyKind.TIEBREAKER and TIEBREAKER.tau == 1


@given(st.lists(st.integers(0, 1), min_size=1, max_size=15), st.sampled_from(VERDICTS), st.integers(0, 15))
def test_threshold_rule_any_size(votes, verdict, tau):
    r = aggregate(votes)
    assert fuse(r, verdict, tiebreaker(tau)).prediction == _expected_tiebreaker(votes, verdict, tau)

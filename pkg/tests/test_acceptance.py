"""Acceptance gate: one test per criterion, reported as a pass/fail line each.

Run ``pytest tests/test_acceptance.py -s`` to also see the per-criterion details.
"""

from __future__ import annotations

import json
import time
from itertools import product
from pathlib import Path

import pytest

import oracle
from syllogistic import logic
from syllogistic.classify import Classifier, ClassifierConfig, SimulatedBiasParams, parse_response
from syllogistic.cli import main
from syllogistic.fusion import ENSEMBLE_ONLY, TIEBREAKER, WEIGHTED, aggregate, fuse
from syllogistic.harness.pipeline import run_pipeline
from syllogistic.harness.reporting import read_folds
from syllogistic.harness.synthetic import generate_synthetic
from syllogistic.logic import (
    CellModel,
    Form,
    Proposition,
    PropositionType as T,
    SemanticsMode,
    Verdict,
    all_forms,
    check_sat,
    decide_validity,
    holds_in_model,
    instantiate,
)
from syllogistic.metrics import aggregate_folds, combined_score
from syllogistic.parser import parse_or_raise

MODES = list(SemanticsMode)

_NEGATION = {T.A: T.O, T.E: T.I, T.I: T.E, T.O: T.A}


def _eq1_via_check_sat(s, mode):
    """Premises plus existence axioms must be satisfiable; adding not-C must not be.

    Existence axioms are applied by filtering cell models; the propositions
    themselves are checked with check_sat in Boolean mode.
    """
    axioms = set()
    for p in s.propositions:
        if mode is SemanticsMode.SUBJECT_IMPORT and p.ptype.universal:
            axioms.add(p.subject)
        elif mode is SemanticsMode.ALL_TERMS_NONEMPTY:
            axioms.update((p.subject, p.predicate))

    def sat(props):
        if not axioms:
            return check_sat(props, SemanticsMode.BOOLEAN)
        return any(
            all(holds_in_model(p, m) for p in props) and all(m.extension(t) for t in axioms)
            for m in CellModel.all(s.terms)
        )

    premises = [s.premise1, s.premise2]
    if not sat(premises):
        return Verdict.INDETERMINATE
    not_c = Proposition(_NEGATION[s.conclusion.ptype], s.conclusion.subject, s.conclusion.predicate)
    return Verdict.INVALID if sat(premises + [not_c]) else Verdict.VALID


@pytest.mark.criterion(1, "solver agrees with independent brute force on 256 forms x 3 modes, < 1 s")
def test_criterion_1_solver_correctness():
    logic._bare_models.cache_clear()
    logic._nonempty_models.cache_clear()
    start = time.perf_counter()
    native = {(str(f), m): decide_validity(instantiate(f), m) for f in all_forms() for m in MODES}
    elapsed = time.perf_counter() - start

    disagreements = []
    for m in MODES:
        brute = oracle.form_verdicts(m.value)
        for f in all_forms():
            eq1 = _eq1_via_check_sat(instantiate(f), m)
            if not (native[str(f), m].value == brute[str(f)] == eq1.value):
                disagreements.append((str(f), m.value))
    print(f"\ncriterion 1: {len(native)} decisions in {elapsed * 1000:.1f} ms, {len(disagreements)} disagreements")
    assert disagreements == []
    assert elapsed < 1.0


@pytest.mark.criterion(2, "Boolean has 15 valid forms; subject import is a strict superset with Darapti/Felapton")
def test_criterion_2_classical_count():
    def valid(mode):
        return {f for f in all_forms() if decide_validity(instantiate(f), mode) is Verdict.VALID}

    boolean, subject = valid(SemanticsMode.BOOLEAN), valid(SemanticsMode.SUBJECT_IMPORT)
    print(f"\ncriterion 2: boolean {len(boolean)}, subject-import {len(subject)}")
    assert len(boolean) == 15
    assert boolean < subject
    assert {Form("EAO", 3), Form("AAI", 3)} <= subject - boolean


@pytest.mark.criterion(3, "combined score 17.35 and 37.67 (+-0.01); per-fold averaging documented")
def test_criterion_3_combined_score():
    a, b = combined_score(74.7, 26.28), combined_score(93.4, 3.39)
    print(f"\ncriterion 3: {a:.4f} {b:.4f}")
    assert a == pytest.approx(17.35, abs=0.01)
    assert b == pytest.approx(37.67, abs=0.01)
    # The offset from published means comes from averaging per-fold scores.
    assert "mean of per-fold scores" in aggregate_folds.__doc__


@pytest.mark.criterion(4, "fusion algebra over 2^5 votes x 3 verdicts; margins {1,3,5}; weighted == ensemble")
def test_criterion_4_fusion_algebra():
    margins = set()
    checked = 0
    for votes, verdict in product(product((0, 1), repeat=5), list(Verdict)):
        r = aggregate(votes)
        margins.add(r.margin)
        z = verdict.as_vote()
        expected = z if (r.margin <= 1 and z is not None) else r.majority
        assert fuse(r, verdict, TIEBREAKER).prediction == expected
        assert fuse(r, verdict, WEIGHTED).prediction == fuse(r, verdict, ENSEMBLE_ONLY).prediction
        checked += 1
    print(f"\ncriterion 4: {checked} combinations, margins {sorted(margins)}")
    assert checked == 96
    assert margins == {1, 3, 5}


FIG_1A = (
    "There are no humans that are not made of glass. Every single thing made of glass is "
    "indestructible. Therefore, some indestructible things are humans."
)
FIG_1B = "Some fish are penguins. All penguins belong to the class of birds. Therefore, some birds are fish."
FIG_1C = (
    "Anything that is a rose is a flower. Under no circumstances is a flower a tree. "
    "Therefore, some trees are not roses."
)


@pytest.mark.criterion(5, "the three wrong-flip texts parse correctly; 1(c) is valid with all terms nonempty")
def test_criterion_5_parser_regression():
    a, b, c = parse_or_raise(FIG_1A), parse_or_raise(FIG_1B), parse_or_raise(FIG_1C)
    assert a.premise1 == Proposition(T.A, "humans", "made of glass")
    assert b.premise2 == Proposition(T.A, "penguins", "birds")
    assert "birds" in b.terms and not any("class" in t for t in b.terms)
    assert c.premise2 == Proposition(T.E, "flower", "tree")
    assert decide_validity(c, SemanticsMode.ALL_TERMS_NONEMPTY) is Verdict.VALID
    subject_import = decide_validity(c, SemanticsMode.SUBJECT_IMPORT)
    # Flagged: gold is valid, but subject import alone leaves "trees" possibly empty.
    print(f"\ncriterion 5: 1(c) under subject-import -> {subject_import.value} (flagged; gold label is valid)")
    assert subject_import is Verdict.INVALID


GOLDEN = [
    ("ANSWER: true", 1, 1),
    ("Let me check the chain.\nANSWER: true", 1, 1),
    ("answer: FALSE", 0, 1),
    ("ANSWER: false\nOn reflection, ANSWER: true", 1, 1),
    ("The answer is valid.\nANSWER: false", 0, 1),
    ("ANSWER:true", 1, 1),
    ("**ANSWER:** true", 1, 1),
    ("true", 1, 2),
    ("false", 0, 2),
    ("The structure is Barbara.\n\nValid", 1, 2),
    ("Reasoning about sets.\nInvalid.", 0, 2),
    ("The middle term is undistributed.\nfalse", 0, 2),
    ("I believe the syllogism is invalid.", 0, 3),
    ("At first it seems true, but the argument is actually invalid since the middle is undistributed.", 0, 3),
    ("It is true that the conclusion holds in every model.", 1, 3),
    ("The syllogism is valid. See the reasoning above.", 1, 3),
    ("", 0, 4),
    ("   \n\n  ", 0, 4),
    ("I cannot determine this.", 0, 4),
    ("Validity depends on the reading of the quantifiers.", 0, 4),
]


@pytest.mark.criterion(6, "response parser golden suite (20 cases, all four stages)")
def test_criterion_6_response_parser():
    assert len(GOLDEN) == 20
    assert {stage for _, _, stage in GOLDEN} == {1, 2, 3, 4}
    got = [(parse_response(text).value, parse_response(text).stage) for text, _, _ in GOLDEN]
    want = [(value, stage) for _, value, stage in GOLDEN]
    print(f"\ncriterion 6: {sum(g == w for g, w in zip(got, want))}/20 exact")
    assert got == want


@pytest.mark.criterion(7, "tiebreaker lowers CE without losing accuracy in >= 18/20 seeds, < 30 s")
def test_criterion_7_tiebreaker_hypothesis():
    start = time.perf_counter()
    corpus = generate_synthetic(seed=0)
    assert len(corpus) == 512
    wins = 0
    for seed in range(20):
        classifiers = [
            Classifier(ClassifierConfig(id=f"c{i}", simulated=SimulatedBiasParams(0.9, 0.3, seed=1000 * seed + i)))
            for i in range(5)
        ]
        report = run_pipeline(corpus, classifiers, [ENSEMBLE_ONLY, TIEBREAKER])
        # Rule-based extraction on generated text plus the exact solver is a perfect solver.
        assert all(r.verdict.as_vote() == r.gold for r in report.instances)
        ens, tb = report.strategies[ENSEMBLE_ONLY.name], report.strategies[TIEBREAKER.name]
        wins += tb.content_effect < ens.content_effect and tb.accuracy >= ens.accuracy
    elapsed = time.perf_counter() - start
    print(f"\ncriterion 7: {wins}/20 seeds, {elapsed:.1f} s")
    assert wins >= 18
    assert elapsed < 30


def _snapshot(directory: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


@pytest.mark.criterion(8, "two offline cv runs from the same config give byte-identical reports")
def test_criterion_8_determinism(tmp_path, capsys):
    out = tmp_path / "run"
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"seed": 7, "output_dir": str(out)}), encoding="utf-8")
    assert main(["cv", "--config", str(cfg)]) == 0
    first = _snapshot(out)
    assert main(["cv", "--config", str(cfg)]) == 0
    second = _snapshot(out)
    # Re-running from the written config into a fresh directory reproduces everything else too.
    assert main(["cv", "--config", str(out / "config.json"), "--out", str(tmp_path / "again")]) == 0
    third = _snapshot(tmp_path / "again")
    capsys.readouterr()
    assert first == second
    assert {k: v for k, v in first.items() if k != "config.json"} == {
        k: v for k, v in third.items() if k != "config.json"
    }
    print(f"\ncriterion 8: {len(first)} files identical")


@pytest.mark.criterion(9, "accounting identities hold on every fold of every run")
def test_criterion_9_accounting(tmp_path, capsys):
    runs = []
    for seed in range(3):
        cfg = tmp_path / f"c{seed}.json"
        cfg.write_text(json.dumps({"seed": seed, "output_dir": str(tmp_path / f"r{seed}")}), encoding="utf-8")
        assert main(["cv", "--config", str(cfg)]) == 0
        runs.append(read_folds(tmp_path / f"r{seed}"))
    capsys.readouterr()
    checked = 0
    for folds in runs:
        for fold in folds:
            tb = fold["run"]["tiebreaker"]
            assert tb["correct_flips"] - tb["wrong_flips"] == tb["correct_tiebreaker"] - tb["correct_ensemble"]
            assert tb["correct_flips"] + tb["wrong_flips"] == tb["overrides"]
            assert tb["splits"] + tb["non_splits"] == tb["total"] == fold["n_evaluation"]
            checked += 1
    print(f"\ncriterion 9: {checked} folds checked")
    assert checked == 15

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syllogistic.harness.synthetic import synthesize
from syllogistic.logic import Proposition, PropositionType as T, SemanticsMode, SyllogismStructure
from syllogistic.parser import (
    ParseError,
    ParseFailure,
    classify_proposition,
    normalize_term,
    parse_or_raise,
    parse_syllogism,
    split_and_find_conclusion,
    unify_terms,
)

FIG_1A = (
    "There are no humans that are not made of glass. Every single thing made of glass is "
    "indestructible. Therefore, some indestructible things are humans."
)
FIG_1B = "Some fish are penguins. All penguins belong to the class of birds. Therefore, some birds are fish."
FIG_1C = (
    "Anything that is a rose is a flower. Under no circumstances is a flower a tree. "
    "Therefore, some trees are not roses."
)


class TestSplit:
    def test_canonical(self):
        premises, conclusion = split_and_find_conclusion("All A are B. All B are C. Therefore, all A are C.")
        assert premises == ["All A are B", "All B are C"]
        assert conclusion == "all A are C"

    def test_figure_1b(self):
        _, conclusion = split_and_find_conclusion(FIG_1B)
        assert conclusion == "some birds are fish"

    def test_missing_marker(self):
        with pytest.raises(ParseError) as err:
            split_and_find_conclusion("All A are B. All B are C.")
        assert err.value.reason is ParseFailure.NO_CONCLUSION_MARKER

    def test_marker_inside_term_is_ignored(self):
        # "so" inside "some" or mid-clause must not split.
        _, conclusion = split_and_find_conclusion("Some cats are soft. All soft things are warm. Hence some cats are warm.")
        assert conclusion == "some cats are warm"

    def test_three_premises(self):
        with pytest.raises(ParseError) as err:
            split_and_find_conclusion("All a are b. All b are c. All c are d. Thus all a are d.")
        assert err.value.reason is ParseFailure.SENTENCE_COUNT

    @pytest.mark.parametrize("marker", ["Hence", "Thus", "Consequently", "So", "It follows that", "∴"])
    def test_markers(self, marker):
        _, conclusion = split_and_find_conclusion(f"All a are b. All b are c. {marker} all a are c.")
        assert conclusion == "all a are c"


class TestClassify:
    @pytest.mark.parametrize(
        "sentence, expected",
        [
            ("There are no humans that are not made of glass", (T.A, "humans", "made of glass")),
            ("Under no circumstances is a flower a tree", (T.E, "flower", "tree")),
            ("All penguins belong to the class of birds", (T.A, "penguins", "birds")),
            ("Some politicians are corrupt", (T.I, "politicians", "corrupt")),
            ("No fish are mammals", (T.E, "fish", "mammals")),
            ("Some lizards are not reptiles", (T.O, "lizards", "reptiles")),
            ("Not all birds are flyers", (T.O, "birds", "flyers")),
            ("Anything that is a rose is a flower", (T.A, "rose", "flower")),
            ("Every single thing made of glass is indestructible", (T.A, "made of glass", "indestructible")),
            ("There are some cats that are not pets", (T.O, "cats", "pets")),
            ("At least one dog is a pet", (T.I, "dog", "pet")),
            ("Nothing that is a stone is alive", (T.E, "stone", "alive")),
            ("Nothing that is a rose is not a plant", (T.A, "rose", "plant")),
            ("None of the planets are stars", (T.E, "planets", "stars")),
        ],
    )
    def test_frames(self, sentence, expected):
        assert classify_proposition(sentence) == Proposition(*expected)

    def test_unrecognized(self):
        with pytest.raises(ParseError) as err:
            classify_proposition("Most cats are pets")
        assert err.value.reason is ParseFailure.UNRECOGNIZED_QUANTIFIER

    def test_normalize(self):
        assert normalize_term("  The Dogs. ") == "dogs"
        assert normalize_term("indestructible things") == "indestructible"

    def test_unify_plural(self):
        canon = unify_terms(["roses", "rose", "trees", "tree", "flower"])
        assert canon["roses"] == "rose" and canon["trees"] == "tree"


class TestParseSyllogism:
    def test_figure_1b(self):
        assert parse_or_raise(FIG_1B) == SyllogismStructure.of(
            Proposition(T.I, "fish", "penguins"),
            Proposition(T.A, "penguins", "birds"),
            Proposition(T.I, "birds", "fish"),
        )

    def test_figure_1a_premise_type(self):
        s = parse_or_raise(FIG_1A)
        assert s.premise1 == Proposition(T.A, "humans", "made of glass")
        assert s.premise2 == Proposition(T.A, "made of glass", "indestructible")
        assert s.conclusion == Proposition(T.I, "indestructible", "humans")

    def test_figure_1c(self):
        s = parse_or_raise(FIG_1C)
        assert s.premise1 == Proposition(T.A, "rose", "flower")
        assert s.premise2 == Proposition(T.E, "flower", "tree")
        assert s.conclusion == Proposition(T.O, "tree", "rose")

    def test_four_terms(self):
        r = parse_syllogism("All a are b. All c are d. Therefore, all a are d.")
        assert not r.ok and r.failure is ParseFailure.TERM_MISMATCH

    def test_empty(self):
        assert parse_syllogism("").failure is ParseFailure.SENTENCE_COUNT

    def test_result_types(self):
        r = parse_syllogism("All A are B. All B are C.")
        assert r.structure is None and r.failure is ParseFailure.NO_CONCLUSION_MARKER


@pytest.fixture(scope="module")
def corpus():
    return synthesize(mode=SemanticsMode.SUBJECT_IMPORT, seed=3)


def test_round_trip(corpus):
    for item in corpus:
        assert parse_or_raise(item.instance.text) == item.structure, item.instance.text


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_any_seed(seed):
    for item in synthesize(seed=seed, size=20):
        assert parse_syllogism(item.instance.text).structure == item.structure


def test_deterministic():
    assert parse_syllogism(FIG_1A) == parse_syllogism(FIG_1A)


def test_plausibility_blind(corpus):
    # Twins share frames, so both parse to the same form whatever the content.
    by_pair = {}
    for item in corpus:
        by_pair.setdefault(item.instance.pair_id, []).append(item)
    for a, b in by_pair.values():
        sa, sb = parse_or_raise(a.instance.text), parse_or_raise(b.instance.text)
        assert [p.ptype for p in sa.propositions] == [p.ptype for p in sb.propositions]

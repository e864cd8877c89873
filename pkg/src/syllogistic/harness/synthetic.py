"""Synthetic corpus: every mood x figure rendered as English, in believable and
unbelievable twins that share a pair id, a gold label and the same wording frames.

Plausibility is a property of the term triple drawn from the lexicon, so the two
twins differ only in content words.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from ..logic import (
    Form,
    PropositionType,
    SemanticsMode,
    SyllogismStructure,
    Verdict,
    all_forms,
    decide_validity,
    instantiate,
)
from ..parser import term_variants
from .dataset import DatasetInstance

# (minor, middle, major) triples; plural nouns only.
DEFAULT_LEXICON = {
    "believable": [
        ["roses", "flowers", "plants"],
        ["sparrows", "birds", "animals"],
        ["poodles", "dogs", "mammals"],
        ["oaks", "trees", "organisms"],
        ["violins", "instruments", "objects"],
        ["salmon", "fish", "vertebrates"],
        ["sedans", "cars", "vehicles"],
        ["apples", "fruits", "foods"],
    ],
    "unbelievable": [
        ["humans", "reptiles", "planets"],
        ["mountains", "insects", "liquids"],
        ["cats", "stones", "clouds"],
        ["whales", "birds", "metals"],
        ["pencils", "oceans", "mammals"],
        ["tomatoes", "robots", "stars"],
        ["bicycles", "fungi", "emotions"],
        ["penguins", "volcanoes", "vegetables"],
    ],
}

FRAMES = {
    PropositionType.A: (
        "all {s} are {p}",
        "there are no {s} that are not {p}",
        "all {s} belong to the class of {p}",
    ),
    PropositionType.E: (
        "no {s} are {p}",
        "there are no {s} that are {p}",
        "none of the {s} are {p}",
    ),
    PropositionType.I: (
        "some {s} are {p}",
        "there are some {s} that are {p}",
    ),
    PropositionType.O: (
        "some {s} are not {p}",
        "not all {s} are {p}",
    ),
}

MARKERS = ("Therefore,", "Hence,", "Thus,", "Consequently,", "So,")


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class SyntheticItem:
    instance: DatasetInstance
    structure: SyllogismStructure
    form: Form


def load_lexicon(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            lexicon = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(lexicon, dict):
        raise LexiconError(f"{path}: lexicon must be a JSON object")
    _check_lexicon(lexicon)
    return lexicon


def _check_lexicon(lexicon: dict) -> None:
    for tag in ("believable", "unbelievable"):
        triples = lexicon.get(tag) or []
        if not triples:
            raise LexiconError(f"lexicon needs at least one {tag} triple")
        for triple in triples:
            if len(triple) != 3 or len(set(triple)) != 3:
                raise LexiconError(f"bad triple {triple!r}")
            for i in range(3):
                for j in range(i + 1, 3):
                    if term_variants(triple[i]) & term_variants(triple[j]):
                        raise LexiconError(f"terms in {triple!r} are not distinguishable")


def render(structure: SyllogismStructure, frames: tuple[int, int, int], marker: str) -> str:
    clauses = []
    for prop, choice in zip(structure.propositions, frames):
        options = FRAMES[prop.ptype]
        clauses.append(options[choice % len(options)].format(s=prop.subject, p=prop.predicate))
    p1, p2, c = clauses
    return f"{p1[0].upper()}{p1[1:]}. {p2[0].upper()}{p2[1:]}. {marker} {c}."


def synthesize(
    lexicon: dict | None = None,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    seed: int = 0,
    size: int | None = None,
) -> list[SyntheticItem]:
    """Generate twins for every determinate form, or ``size`` instances balanced by validity."""
    lexicon = lexicon or DEFAULT_LEXICON
    _check_lexicon(lexicon)
    rng = random.Random(seed)
    labelled = [(f, v) for f in all_forms() if (v := decide_validity(instantiate(f), mode)) is not Verdict.INDETERMINATE]
    if size is None:
        chosen = [f for f, _ in labelled]
    else:
        if size < 2 or size % 2:
            raise ValueError("size must be an even number >= 2")
        valid = [f for f, v in labelled if v is Verdict.VALID]
        invalid = [f for f, v in labelled if v is Verdict.INVALID]
        n_pairs = size // 2
        chosen = [rng.choice(valid) for _ in range(n_pairs // 2)]
        chosen += [rng.choice(invalid) for _ in range(n_pairs - n_pairs // 2)]
        rng.shuffle(chosen)

    items: list[SyntheticItem] = []
    for k, form in enumerate(chosen):
        pair_id = f"p{k:04d}"
        frames = tuple(rng.randrange(6) for _ in range(3))
        marker = rng.choice(MARKERS)
        triples = {tag: rng.choice(lexicon[tag]) for tag in ("believable", "unbelievable")}
        for tag, triple in triples.items():
            s, m, p = triple
            structure = instantiate(form, s=s, m=m, p=p)
            gold = decide_validity(structure, mode)
            inst = DatasetInstance(
                id=f"{pair_id}-{tag[0]}",
                text=render(structure, frames, marker),
                valid=gold is Verdict.VALID,
                plausibility=tag,
                pair_id=pair_id,
            )
            items.append(SyntheticItem(inst, structure, form))
    return items


def generate_synthetic(
    lexicon: dict | None = None,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    seed: int = 0,
    size: int | None = None,
) -> list[DatasetInstance]:
    return [item.instance for item in synthesize(lexicon, mode, seed, size)]


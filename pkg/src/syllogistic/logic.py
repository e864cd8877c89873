"""Exact validity decisions for categorical syllogisms.

Three unary predicates split the domain into 8 cells (one per membership
triple), so a model is just the set of inhabited cells and there are 256 of
them.  Monadic logic has the finite-model property, which makes enumerating
those 256 models a complete decision procedure for the fragment.

Existential import is handled as *existence axioms*: each semantics mode says
which terms of a proposition must be nonempty, and a structure's axioms are the
union of those requirements over both premises and the conclusion.  Validity
is then decided against the bare (import-free) conclusion:

    Indeterminate  if  P1 and P2 and axioms  has no model
    Valid          if  every model of  P1 and P2 and axioms  satisfies C
    Invalid        otherwise
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache


class StructureError(ValueError):
    """Raised for malformed syllogism structures."""


class PropositionType(str, enum.Enum):
    A = "A"
    E = "E"
    I = "I"  # noqa: E741
    O = "O"  # noqa: E741

    @property
    def universal(self) -> bool:
        return self in (PropositionType.A, PropositionType.E)


class SemanticsMode(str, enum.Enum):
    BOOLEAN = "boolean"
    SUBJECT_IMPORT = "subject-import"
    ALL_TERMS_NONEMPTY = "all-terms-nonempty"


class Verdict(str, enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    INDETERMINATE = "indeterminate"

    def as_vote(self) -> int | None:
        if self is Verdict.VALID:
            return 1
        if self is Verdict.INVALID:
            return 0
        return None


@dataclass(frozen=True)
class Proposition:
    ptype: PropositionType
    subject: str
    predicate: str

    def __post_init__(self):
        if not isinstance(self.ptype, PropositionType):
            object.__setattr__(self, "ptype", PropositionType(self.ptype))
        if self.subject == self.predicate:
            raise StructureError(f"subject and predicate are both {self.subject!r}")

    def __str__(self) -> str:
        return f"{self.ptype.value}({self.subject}, {self.predicate})"


@dataclass(frozen=True)
class SyllogismStructure:
    terms: tuple[str, str, str]
    premise1: Proposition
    premise2: Proposition
    conclusion: Proposition

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) != 3 or len(set(terms)) != 3:
            raise StructureError(f"need exactly three distinct terms, got {terms!r}")
        used = set()
        for prop in self.propositions:
            for term in (prop.subject, prop.predicate):
                if term not in terms:
                    raise StructureError(f"term {term!r} is not one of {terms!r}")
                used.add(term)
        if used != set(terms):
            raise StructureError(f"terms {sorted(set(terms) - used)!r} never appear")

    @classmethod
    def of(cls, premise1: Proposition, premise2: Proposition, conclusion: Proposition):
        """Build a structure whose term list follows order of first appearance."""
        order: list[str] = []
        for prop in (premise1, premise2, conclusion):
            for term in (prop.subject, prop.predicate):
                if term not in order:
                    order.append(term)
        if len(order) != 3:
            raise StructureError(f"need exactly three distinct terms, got {order!r}")
        return cls(tuple(order), premise1, premise2, conclusion)

    @property
    def propositions(self) -> tuple[Proposition, Proposition, Proposition]:
        return (self.premise1, self.premise2, self.conclusion)

    def to_record(self) -> dict:
        """Render in the extraction JSON shape (terms/premise1/premise2/conclusion)."""
        out: dict = {"terms": list(self.terms)}
        for name, prop in zip(("premise1", "premise2", "conclusion"), self.propositions):
            out[name] = {"type": prop.ptype.value, "subject": prop.subject, "predicate": prop.predicate}
        return out

    def __str__(self) -> str:
        return f"{self.premise1}, {self.premise2} |- {self.conclusion}"


CELLS = tuple(range(8))
N_MODELS = 256
ALL_MODELS = (1 << N_MODELS) - 1


@dataclass(frozen=True)
class CellModel:
    """Inhabited cells over three terms; ``mask`` bit c set means cell c is inhabited.

    Cell c encodes membership of term i as bit i of c.
    """

    terms: tuple[str, str, str]
    mask: int

    @property
    def inhabited(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(
            ((c >> 0) & 1, (c >> 1) & 1, (c >> 2) & 1) for c in CELLS if self.mask >> c & 1
        )

    def extension(self, term: str) -> frozenset[int]:
        i = self.terms.index(term)
        return frozenset(c for c in CELLS if self.mask >> c & 1 and c >> i & 1)

    @classmethod
    def all(cls, terms: tuple[str, str, str]):
        for mask in range(N_MODELS):
            yield cls(terms, mask)


def existence_requirements(p: Proposition, mode: SemanticsMode) -> tuple[str, ...]:
    """Terms that ``mode`` requires to be nonempty on behalf of ``p``."""
    if mode is SemanticsMode.SUBJECT_IMPORT:
        return (p.subject,) if p.ptype.universal else ()
    if mode is SemanticsMode.ALL_TERMS_NONEMPTY:
        return (p.subject, p.predicate)
    return ()


def _holds_bare(p: Proposition, m: CellModel) -> bool:
    s, q = m.extension(p.subject), m.extension(p.predicate)
    if p.ptype is PropositionType.A:
        return s <= q
    if p.ptype is PropositionType.E:
        return not (s & q)
    if p.ptype is PropositionType.I:
        return bool(s & q)
    return bool(s - q)


def holds_in_model(p: Proposition, m: CellModel, mode: SemanticsMode = SemanticsMode.BOOLEAN) -> bool:
    if not _holds_bare(p, m):
        return False
    return all(m.extension(t) for t in existence_requirements(p, mode))


# Model sets are 256-bit ints: bit k set means the model with mask k qualifies.


@lru_cache(maxsize=None)
def _bare_models(ptype: PropositionType, s: int, p: int) -> int:
    terms = ("t0", "t1", "t2")
    prop = Proposition(ptype, terms[s], terms[p])
    bits = 0
    for m in CellModel.all(terms):
        if _holds_bare(prop, m):
            bits |= 1 << m.mask
    return bits


@lru_cache(maxsize=None)
def _nonempty_models(i: int) -> int:
    bits = 0
    for mask in range(N_MODELS):
        if any(mask >> c & 1 and c >> i & 1 for c in CELLS):
            bits |= 1 << mask
    return bits


def _positions(terms: tuple[str, ...], p: Proposition) -> tuple[int, int]:
    try:
        return terms.index(p.subject), terms.index(p.predicate)
    except ValueError:
        raise StructureError(f"{p} uses a term outside {terms!r}") from None


def _model_set(p: Proposition, terms: tuple[str, ...], mode: SemanticsMode) -> int:
    s, q = _positions(terms, p)
    bits = _bare_models(p.ptype, s, q)
    for t in existence_requirements(p, mode):
        bits &= _nonempty_models(terms.index(t))
    return bits


def check_sat(props: list[Proposition], mode: SemanticsMode = SemanticsMode.BOOLEAN) -> bool:
    """True iff some cell model satisfies every proposition (at most three terms)."""
    terms: list[str] = []
    for p in props:
        for t in (p.subject, p.predicate):
            if t not in terms:
                terms.append(t)
    if len(terms) > 3:
        raise StructureError(f"more than three terms: {terms!r}")
    while len(terms) < 3:
        terms.append(f"\x00pad{len(terms)}")
    bits = ALL_MODELS
    for p in props:
        bits &= _model_set(p, tuple(terms), mode)
    return bits != 0


def axiom_terms(s: SyllogismStructure, mode: SemanticsMode) -> tuple[str, ...]:
    """Terms asserted nonempty by ``mode`` for the whole structure, in term order."""
    wanted = set()
    for p in s.propositions:
        wanted.update(existence_requirements(p, mode))
    return tuple(t for t in s.terms if t in wanted)


def premise_models(s: SyllogismStructure, mode: SemanticsMode) -> int:
    bits = _bare_models(s.premise1.ptype, *_positions(s.terms, s.premise1))
    bits &= _bare_models(s.premise2.ptype, *_positions(s.terms, s.premise2))
    for t in axiom_terms(s, mode):
        bits &= _nonempty_models(s.terms.index(t))
    return bits


def decide_validity(
    s: SyllogismStructure, mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT
) -> Verdict:
    if not isinstance(s, SyllogismStructure):
        raise StructureError(f"expected SyllogismStructure, got {type(s).__name__}")
    support = premise_models(s, mode)
    if not support:
        return Verdict.INDETERMINATE
    concl = _bare_models(s.conclusion.ptype, *_positions(s.terms, s.conclusion))
    return Verdict.VALID if support & ~concl == 0 else Verdict.INVALID


# --- mood / figure ---------------------------------------------------------

# Figure -> (major premise as (first, second), minor premise as (first, second))
# using the roles M (middle), P (major), S (minor).
FIGURES = {
    1: (("M", "P"), ("S", "M")),
    2: (("P", "M"), ("S", "M")),
    3: (("M", "P"), ("M", "S")),
    4: (("P", "M"), ("M", "S")),
}


@dataclass(frozen=True, order=True)
class Form:
    mood: str
    figure: int

    def __str__(self) -> str:
        return f"{self.mood}-{self.figure}"


# Traditional names; the import-dependent ones close the list.
NAMED_FORMS = {
    "Barbara": Form("AAA", 1), "Celarent": Form("EAE", 1), "Darii": Form("AII", 1), "Ferio": Form("EIO", 1),
    "Cesare": Form("EAE", 2), "Camestres": Form("AEE", 2), "Festino": Form("EIO", 2), "Baroco": Form("AOO", 2),
    "Disamis": Form("IAI", 3), "Datisi": Form("AII", 3), "Bocardo": Form("OAO", 3), "Ferison": Form("EIO", 3),
    "Camenes": Form("AEE", 4), "Dimaris": Form("IAI", 4), "Fresison": Form("EIO", 4),
    "Barbari": Form("AAI", 1), "Celaront": Form("EAO", 1), "Cesaro": Form("EAO", 2), "Camestros": Form("AEO", 2),
    "Darapti": Form("AAI", 3), "Felapton": Form("EAO", 3), "Bramantip": Form("AAI", 4),
    "Camenos": Form("AEO", 4), "Fesapo": Form("EAO", 4),
}


def all_forms() -> list[Form]:
    return [
        Form("".join(t), fig)
        for t in itertools.product("AEIO", repeat=3)
        for fig in (1, 2, 3, 4)
    ]


def instantiate(form: Form, s: str = "S", m: str = "M", p: str = "P") -> SyllogismStructure:
    """Build the structure for ``form`` with major premise first."""
    roles = {"S": s, "M": m, "P": p}
    major, minor = FIGURES[form.figure]
    t1, t2, tc = (PropositionType(c) for c in form.mood)
    return SyllogismStructure.of(
        Proposition(t1, roles[major[0]], roles[major[1]]),
        Proposition(t2, roles[minor[0]], roles[minor[1]]),
        Proposition(tc, s, p),
    )


def form_of(s: SyllogismStructure) -> Form | None:
    """Identify mood and figure, accepting either premise order.

    Returns None for structures that are not standard-form syllogisms (e.g. both
    premises over the same pair of terms).
    """
    minor_t, major_t = s.conclusion.subject, s.conclusion.predicate
    middle = next(t for t in s.terms if t not in (minor_t, major_t))
    p1, p2 = s.premise1, s.premise2
    if {p1.subject, p1.predicate} == {minor_t, middle} and {p2.subject, p2.predicate} == {major_t, middle}:
        p1, p2 = p2, p1
    if {p1.subject, p1.predicate} != {major_t, middle} or {p2.subject, p2.predicate} != {minor_t, middle}:
        return None
    role = {minor_t: "S", middle: "M", major_t: "P"}
    shape = ((role[p1.subject], role[p1.predicate]), (role[p2.subject], role[p2.predicate]))
    figure = next(f for f, layout in FIGURES.items() if layout == shape)
    return Form(p1.ptype.value + p2.ptype.value + s.conclusion.ptype.value, figure)


def enumerate_forms(mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT) -> dict[Form, Verdict]:
    return {form: decide_validity(instantiate(form), mode) for form in all_forms()}


def mode_agreement(s: SyllogismStructure, gold_valid: bool) -> dict[SemanticsMode, bool]:
    """Which semantics modes reproduce a gold label for ``s``."""
    want = Verdict.VALID if gold_valid else Verdict.INVALID
    return {mode: decide_validity(s, mode) is want for mode in SemanticsMode}

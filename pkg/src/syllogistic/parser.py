"""Rule-based parser from syllogism text to :class:`SyllogismStructure`.

The parser recognizes a closed inventory of quantifier frames and fails with a
typed reason on anything else.  It looks only at surface syntax.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .logic import Proposition, PropositionType, StructureError, SyllogismStructure


class ParseFailure(str, enum.Enum):
    NO_CONCLUSION_MARKER = "no-conclusion-marker"
    UNRECOGNIZED_QUANTIFIER = "unrecognized-quantifier"
    TERM_MISMATCH = "term-mismatch"
    SENTENCE_COUNT = "sentence-count"


class ParseError(ValueError):
    def __init__(self, reason: ParseFailure, detail: str = ""):
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class ParseResult:
    structure: SyllogismStructure | None = None
    failure: ParseFailure | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.structure is not None


CONCLUSION_MARKERS = ("therefore", "hence", "thus", "consequently", "so", "it follows that")

_MARKER_RE = re.compile(
    r"(?:^|(?<=[.;!?,:])\s*|\s)(∴|\b(?:" + "|".join(m.replace(" ", r"\s+") for m in CONCLUSION_MARKERS) + r")\b)",
    re.IGNORECASE,
)


def split_and_find_conclusion(text: str) -> tuple[list[str], str]:
    """Return ``([premise1, premise2], conclusion)`` as raw clauses."""
    text = " ".join(text.split())
    # Markers count only at a clause start: text start, after punctuation.
    match = None
    for m in _MARKER_RE.finditer(text):
        before = text[: m.start(1)].rstrip()
        if not before or before[-1] in ".;!?,:":
            match = m
            break
    if match is None:
        raise ParseError(ParseFailure.NO_CONCLUSION_MARKER)
    head, tail = text[: match.start(1)], text[match.end(1):]
    conclusion = re.sub(r"^[\s,:]+", "", tail)
    conclusion = re.sub(r"^(?:it\s+follows\s+that|that)\s+", "", conclusion, flags=re.IGNORECASE)
    conclusion = conclusion.strip().rstrip(".;!? ")
    premises = [p.strip(" ,") for p in re.split(r"[.;!?]+", head) if p.strip(" ,")]
    if len(premises) != 2 or not conclusion:
        raise ParseError(ParseFailure.SENTENCE_COUNT, f"found {len(premises)} premise clauses")
    return premises, conclusion


_ART = r"(?:(?:a|an|the)\s+)?"
_COPULA = (
    r"(?:belongs?\s+to\s+the\s+(?:class|group|category|set|family)\s+of"
    r"|are\s+(?:all\s+)?members\s+of|is\s+a\s+member\s+of"
    r"|are|is)"
)
_NEG_COPULA = (
    r"(?:do\s+not\s+belong\s+to\s+the\s+(?:class|group|category|set|family)\s+of"
    r"|does\s+not\s+belong\s+to\s+the\s+(?:class|group|category|set|family)\s+of"
    r"|are\s+not|is\s+not|aren't|isn't)"
)
_REL = r"(?:that|which|who)\s+(?:are|is)"

T = PropositionType
# Order matters: negated and double-negated frames precede their plain forms.
FRAMES: list[tuple[re.Pattern, PropositionType]] = [
    (re.compile(rf"^there\s+(?:are|is|exist|exists)\s+no\s+(?P<s>.+?)\s+{_REL}\s+not\s+(?P<p>.+)$"), T.A),
    (re.compile(rf"^(?:nothing|no\s+one)\s+{_REL}\s+(?P<s>.+?)\s+{_NEG_COPULA}\s+(?P<p>.+)$"), T.A),
    (re.compile(r"^not\s+(?:all|every)\s+(?P<s>.+?)\s+" + _COPULA + r"\s+(?P<p>.+)$"), T.O),
    (re.compile(rf"^under\s+no\s+circumstances?\s+(?:is|are)\s+{_ART}(?P<s>.+?)\s+(?P<p>(?:a|an|the)\s+.+)$"), T.E),
    (re.compile(rf"^there\s+(?:are|is|exist|exists)\s+no\s+(?P<s>.+?)\s+{_REL}\s+(?P<p>.+)$"), T.E),
    (re.compile(rf"^(?:nothing|no\s+one)\s+{_REL}\s+(?P<s>.+?)\s+{_COPULA}\s+(?P<p>.+)$"), T.E),
    (re.compile(r"^none\s+of\s+the\s+(?P<s>.+?)\s+" + _COPULA + r"\s+(?P<p>.+)$"), T.E),
    (re.compile(r"^no\s+(?P<s>.+?)\s+" + _COPULA + r"\s+(?P<p>.+)$"), T.E),
    (re.compile(rf"^(?:anything|everything|whatever|whoever|anyone|everyone)\s+(?:{_REL}\s+|is\s+)?(?P<s>.+?)\s+{_COPULA}\s+(?P<p>.+)$"), T.A),
    (re.compile(rf"^(?:all|every|each|any)(?:\s+single)?\s+(?:things?|ones?|members?\s+of\s+the\s+class\s+of)\s+{_REL}\s+(?P<s>.+?)\s+{_COPULA}\s+(?P<p>.+)$"), T.A),
    (re.compile(r"^(?:all\s+of\s+the|all\s+the|all|every|each|any)\s+(?P<s>.+?)\s+" + _COPULA + r"\s+(?P<p>.+)$"), T.A),
    (re.compile(rf"^(?:there\s+(?:are|is|exist|exists)\s+)?(?:some|at\s+least\s+one)\s+(?P<s>.+?)\s+{_REL}\s+not\s+(?P<p>.+)$"), T.O),
    (re.compile(r"^(?:some|at\s+least\s+one)\s+(?P<s>.+?)\s+" + _NEG_COPULA + r"\s+(?P<p>.+)$"), T.O),
    (re.compile(rf"^(?:there\s+(?:are|is|exist|exists)\s+)?(?:some|at\s+least\s+one)\s+(?P<s>.+?)\s+{_REL}\s+(?P<p>.+)$"), T.I),
    (re.compile(r"^(?:some|at\s+least\s+one)\s+(?P<s>.+?)\s+" + _COPULA + r"\s+(?P<p>.+)$"), T.I),
]


def normalize_term(raw: str) -> str:
    """Lowercase, trim punctuation, drop articles and generic heads like "things"."""
    t = raw.lower().strip().strip(".,;:!?\"'")
    t = " ".join(t.split())
    t = re.sub(r"^(?:single\s+)?(?:things?|ones?)\s+(?:that|which|who)\s+(?:are|is)\s+", "", t)
    t = re.sub(r"^single\s+", "", t)
    t = re.sub(r"^(?:things?|ones?)\s+(?=\S)", "", t)
    t = re.sub(r"^(?:(?:a|an|the)\s+)+", "", t)
    t = re.sub(r"\s+(?:things?|ones?|kinds?)$", "", t)
    t = re.sub(r"^kinds?\s+of\s+", "", t)
    return t.strip()


def classify_proposition(sentence: str) -> Proposition:
    text = " ".join(sentence.lower().split()).strip().rstrip(".;!?,")
    for pattern, ptype in FRAMES:
        m = pattern.match(text)
        if m:
            subj, pred = normalize_term(m.group("s")), normalize_term(m.group("p"))
            if not subj or not pred:
                break
            try:
                return Proposition(ptype, subj, pred)
            except StructureError as exc:
                raise ParseError(ParseFailure.TERM_MISMATCH, str(exc)) from None
    raise ParseError(ParseFailure.UNRECOGNIZED_QUANTIFIER, sentence)


def term_variants(term: str) -> set[str]:
    head, _, last = term.rpartition(" ")
    prefix = f"{head} " if head else ""
    out = {last}
    if last.endswith("ies") and len(last) > 4:
        out.add(last[:-3] + "y")
    if last.endswith("es") and len(last) > 3:
        out.add(last[:-2])
    if last.endswith("s") and not last.endswith("ss") and len(last) > 2:
        out.add(last[:-1])
    return {prefix + v for v in out}


def unify_terms(surface: list[str]) -> dict[str, str]:
    """Map each surface term to a canonical term, merging singular/plural variants.

    Canonical form is the shortest surface spelling in its group (ties broken
    alphabetically), so the mapping never invents spellings absent from the text.
    """
    groups: list[set[str]] = []
    for term in surface:
        hits = [g for g in groups if any(term_variants(term) & term_variants(o) for o in g)]
        merged = {term}.union(*hits) if hits else {term}
        groups = [g for g in groups if g not in hits] + [merged]
    canon = {}
    for g in groups:
        rep = min(g, key=lambda t: (len(t), t))
        for t in g:
            canon[t] = rep
    return canon


def parse_syllogism(text: str) -> ParseResult:
    try:
        return ParseResult(structure=parse_or_raise(text))
    except ParseError as exc:
        return ParseResult(failure=exc.reason, detail=exc.detail)


def parse_or_raise(text: str) -> SyllogismStructure:
    if not text or not text.strip():
        raise ParseError(ParseFailure.SENTENCE_COUNT, "empty text")
    premises, conclusion = split_and_find_conclusion(text)
    props = [classify_proposition(c) for c in (*premises, conclusion)]
    surface = [t for p in props for t in (p.subject, p.predicate)]
    canon = unify_terms(surface)
    try:
        props = [Proposition(p.ptype, canon[p.subject], canon[p.predicate]) for p in props]
        return SyllogismStructure.of(*props)
    except StructureError as exc:
        raise ParseError(ParseFailure.TERM_MISMATCH, str(exc)) from None

"""Independent brute-force validity oracle for three-term syllogisms.

Shares no code with the package. A model is a set of inhabited regions of the
three-set Venn diagram; each region is a triple of booleans (in S, in M, in P).
"""

from __future__ import annotations

from itertools import combinations, product

TERMS = ("S", "M", "P")
REGIONS = tuple(product((False, True), repeat=3))
MODELS = tuple(
    frozenset(combo) for r in range(len(REGIONS) + 1) for combo in combinations(REGIONS, r)
)

# Major premise first, then minor; conclusion is always S-P.
FIGURE_PREMISES = {
    1: (("M", "P"), ("S", "M")),
    2: (("P", "M"), ("S", "M")),
    3: (("M", "P"), ("M", "S")),
    4: (("P", "M"), ("M", "S")),
}


def members(model, term):
    i = TERMS.index(term)
    return {r for r in model if r[i]}


def true_in(model, kind, s, p):
    subj, pred = members(model, s), members(model, p)
    if kind == "A":
        return subj <= pred
    if kind == "E":
        return not (subj & pred)
    if kind == "I":
        return bool(subj & pred)
    if kind == "O":
        return bool(subj - pred)
    raise ValueError(kind)


def nonempty_terms(props, mode):
    """Terms the semantics mode asserts to be inhabited."""
    out = set()
    for kind, s, p in props:
        if mode == "subject-import" and kind in "AE":
            out.add(s)
        elif mode == "all-terms-nonempty":
            out.update((s, p))
    return out


def verdict(p1, p2, c, mode):
    axioms = nonempty_terms([p1, p2, c], mode)
    support = [
        m for m in MODELS
        if true_in(m, *p1) and true_in(m, *p2) and all(members(m, t) for t in axioms)
    ]
    if not support:
        return "indeterminate"
    return "valid" if all(true_in(m, *c) for m in support) else "invalid"


def form_props(mood, figure):
    (a, b), (x, y) = FIGURE_PREMISES[figure]
    return (mood[0], a, b), (mood[1], x, y), (mood[2], "S", "P")


def all_moods():
    return ["".join(t) for t in product("AEIO", repeat=3)]


def form_verdicts(mode):
    return {
        f"{mood}-{fig}": verdict(*form_props(mood, fig), mode)
        for mood in all_moods()
        for fig in (1, 2, 3, 4)
    }

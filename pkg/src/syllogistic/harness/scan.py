"""Find the forms whose validity hinges on existential import and compare their gold labels."""

from __future__ import annotations

from ..extraction import RuleBasedExtractor, extract
from ..logic import Form, SemanticsMode, form_of, mode_agreement

IMPORT_FORMS = {"Darapti": Form("AAI", 3), "Felapton": Form("EAO", 3)}


def scan_import_forms(dataset, chain=None, attempts: int = 1) -> dict:
    """Report Darapti/Felapton matches with gold labels and per-mode agreement.

    ``consistent_modes`` lists the semantics modes that reproduce every matched
    gold label (all modes when nothing matched).
    """
    chain = chain or [RuleBasedExtractor()]
    matches = {name: [] for name in IMPORT_FORMS}
    unextractable = []
    for inst in dataset:
        outcome = extract(inst.text, chain, attempts)
        if not outcome.ok:
            unextractable.append(inst.id)
            continue
        form = form_of(outcome.structure)
        for name, wanted in IMPORT_FORMS.items():
            if form == wanted:
                agree = mode_agreement(outcome.structure, inst.valid)
                matches[name].append({
                    "id": inst.id,
                    "valid": inst.valid,
                    "plausibility": inst.plausibility,
                    "modes": {m.value: ok for m, ok in agree.items()},
                })
    consistent = [
        m.value for m in SemanticsMode
        if all(row["modes"][m.value] for rows in matches.values() for row in rows)
    ]
    return {
        "counts": {name: len(rows) for name, rows in matches.items()},
        "valid_counts": {name: sum(r["valid"] for r in rows) for name, rows in matches.items()},
        "matches": matches,
        "unextractable": unextractable,
        "consistent_modes": consistent,
    }

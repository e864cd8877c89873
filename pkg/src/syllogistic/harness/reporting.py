"""Run artifacts and table rendering.

A run directory holds ``config.json``, ``folds.jsonl`` (one JSON line per outer
fold: selection ranking plus the fold's run statistics), ``predictions.jsonl``,
``telemetry.jsonl`` when remote calls were made, and tab-separated tables
rendered from ``folds.jsonl``: ``strategies.tsv``, ``subgroups.tsv``,
``tiebreaker.tsv``, ``coalition.tsv``, ``extraction.tsv``, ``margins.tsv``,
``selection.tsv``, plus ``summary.txt``.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..metrics import MetricsReport, aggregate_folds
from .dataset import Subgroup

STRATEGY_LABELS = {
    "ensemble": "Ensemble (pure)",
    "weighted": "+ Solver Weighted",
    "veto": "+ Solver Veto",
    "solver": "Solver Only",
}


def strategy_label(name: str) -> str:
    if name in STRATEGY_LABELS:
        return STRATEGY_LABELS[name]
    head, _, num = name.rpartition("-")
    if head == "tiebreaker":
        return "+ Solver Tiebreaker" if num == "1" else f"+ Solver Tiebreaker (tau={num})"
    if head == "confidence":
        return "Confidence + Solver" if num == "3" else f"Confidence (tau={num}) + Solver"
    if head == "top":
        return f"Top {num} + Solver"
    return name


def fold_record(result) -> dict:
    return {
        "fold": result.fold.index,
        "n_evaluation": len(result.fold.evaluation),
        "n_inner": len(result.fold.inner),
        "selection": result.selection.to_record(),
        "run": result.run.to_record(),
    }


def _fmt(x) -> str:
    return "" if x is None else f"{x:.2f}"


def _tsv(header: list[str], rows: list[list]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _align(header: list[str], rows: list[list]) -> str:
    table = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    out = []
    for k, r in enumerate(table):
        out.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip())
        if k == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def _strategy_rows(folds: list[dict]):
    # Key order does not survive sort_keys serialization; the explicit list does.
    names = folds[0]["run"]["strategy_order"]
    rows = []
    for name in names:
        summary = aggregate_folds([MetricsReport.from_record(f["run"]["strategies"][name]) for f in folds])
        rows.append((name, summary))
    return rows


def tiebreaker_rows(folds: list[dict]) -> list[tuple[str, int, float | None]]:
    keys = ("total", "splits", "non_splits", "solver_available_on_splits", "degenerate_on_splits",
            "overrides", "correct_flips", "wrong_flips")
    tot = {k: sum(f["run"]["tiebreaker"][k] for f in folds) for k in keys}
    tb = folds[0]["run"]["tiebreaker"]
    n, tau = tb["n_classifiers"], tb["tau"]
    if n == 5 and tau == 1:
        non_split, split = "5-0 or 4-1 splits", "3-2 splits (tiebreaker triggered)"
    else:
        non_split, split = f"Margin > {tau}", f"Margin <= {tau} (tiebreaker triggered)"
    total = tot["total"]

    def pct(x):
        return 100.0 * x / total if total else None

    return [
        ("Total evaluation instances", total, pct(total)),
        (non_split, tot["non_splits"], pct(tot["non_splits"])),
        (split, tot["splits"], pct(tot["splits"])),
        ("  Solver available on splits", tot["solver_available_on_splits"],
         100.0 * tot["solver_available_on_splits"] / tot["splits"] if tot["splits"] else None),
        ("  Degenerate premises", tot["degenerate_on_splits"], pct(tot["degenerate_on_splits"])),
        ("Solver override decisions", tot["overrides"], None),
        ("  Correct flips", tot["correct_flips"], None),
        ("  Wrong flips", tot["wrong_flips"], None),
    ]


def coalition_rows(folds: list[dict]) -> list[tuple[str, int, int, float | None]]:
    agg: dict[str, list[int]] = {}
    for f in folds:
        for cid, row in f["run"]["coalition"].items():
            acc = agg.setdefault(cid, [0, 0])
            acc[0] += row["minority"]
            acc[1] += row["margin1"]
    return [
        (cid, m, total, 100.0 * m / total if total else None)
        for cid, (m, total) in sorted(agg.items(), key=lambda kv: (-(kv[1][0] / kv[1][1]) if kv[1][1] else 0, kv[0]))
    ]


def render_tables(folds: list[dict]) -> dict[str, str]:
    """Render every table from fold records; returns file name -> contents."""
    if not folds:
        raise ValueError("no folds to report")
    out: dict[str, str] = {}
    strategies = _strategy_rows(folds)

    out["strategies.tsv"] = _tsv(
        ["strategy", "acc_mean", "acc_std", "ce_mean", "ce_std", "score_mean", "score_std"],
        [[n, _fmt(s.accuracy.mean), _fmt(s.accuracy.std), _fmt(s.content_effect.mean), _fmt(s.content_effect.std),
          _fmt(s.combined_score.mean), _fmt(s.combined_score.std)] for n, s in strategies],
    )
    out["subgroups.tsv"] = _tsv(
        ["strategy"] + [g.value for g in Subgroup],
        [[n] + [_fmt(s.subgroup_accuracy[g].mean if s.subgroup_accuracy[g] else None) for g in Subgroup]
         for n, s in strategies],
    )
    tb = tiebreaker_rows(folds)
    out["tiebreaker.tsv"] = _tsv(["metric", "count", "percent"], [[m.strip(), c, _fmt(p)] for m, c, p in tb])
    coal = coalition_rows(folds)
    out["coalition.tsv"] = _tsv(["classifier", "minority", "margin1", "rate"], [[c, m, t, _fmt(r)] for c, m, t, r in coal])

    ext_rows = []
    for g in Subgroup:
        total = sum(f["run"]["extraction"][g.value]["total"] for f in folds)
        failed = sum(f["run"]["extraction"][g.value]["failures"] for f in folds)
        ext_rows.append([g.value, total, failed, _fmt(100.0 * failed / total if total else None)])
    out["extraction.tsv"] = _tsv(["subgroup", "total", "failures", "rate"], ext_rows)

    margins: dict[int, list[int]] = {}
    for f in folds:
        for m, row in f["run"]["margin_profile"].items():
            acc = margins.setdefault(int(m), [0, 0, 0])
            acc[0] += row["instances"]
            acc[1] += row["errors"]
            acc[2] += row["incongruent_errors"]
    out["margins.tsv"] = _tsv(
        ["margin", "instances", "errors", "incongruent_errors"],
        [[m, *v] for m, v in sorted(margins.items())],
    )

    sel_rows = []
    for f in folds:
        chosen = set(f["selection"]["chosen"])
        for rank, row in enumerate(f["selection"]["ranking"], start=1):
            sel_rows.append([f["fold"], rank, row["id"], _fmt(row["accuracy"]), _fmt(row["content_effect"]),
                             _fmt(row["combined_score"]), "yes" if row["id"] in chosen else "no"])
    out["selection.tsv"] = _tsv(["fold", "rank", "classifier", "acc", "ce", "score", "chosen"], sel_rows)

    text = [f"Fusion strategies (mean ± std over {len(folds)} folds)\n"]
    text.append(_align(
        ["Strategy", "Acc", "CE", "Score"],
        [[strategy_label(n), str(s.accuracy), str(s.content_effect), str(s.combined_score)] for n, s in strategies],
    ))
    text.append("\nSubgroup accuracy (%)\n")
    text.append(_align(
        ["Strategy"] + [g.value for g in Subgroup],
        [[strategy_label(n)] + [_fmt(s.subgroup_accuracy[g].mean if s.subgroup_accuracy[g] else None) for g in Subgroup]
         for n, s in strategies],
    ))
    text.append("\nTiebreaker behavior\n")
    text.append(_align(["Metric", "Count", "%"], [[m, c, _fmt(p)] for m, c, p in tb]))
    text.append("\nMinority coalition on margin-1 instances\n")
    text.append(_align(["Classifier", "Minority", "Margin-1", "%"], [[c, m, t, _fmt(r)] for c, m, t, r in coal]))
    text.append("\nExtraction failures by subgroup\n")
    text.append(_align(["Subgroup", "Total", "Failures", "%"], ext_rows))
    out["summary.txt"] = "".join(text)
    return out


def write_run(out_dir, config_text: str, fold_results) -> dict[str, str]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = [fold_record(r) for r in fold_results]
    (out / "config.json").write_text(config_text, encoding="utf-8")
    (out / "folds.jsonl").write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in records), encoding="utf-8"
    )
    preds = []
    telemetry = []
    for r in fold_results:
        for inst in r.run.instances:
            preds.append(json.dumps({"fold": r.fold.index, **inst.to_record()}, sort_keys=True) + "\n")
            calls = [(f"classify:{cid}", v.telemetry) for cid, v in zip(r.run.classifier_ids, inst.votes)]
            calls += [("extract", t) for t in inst.extraction_telemetry]
            for call, tel in calls:
                if tel is not None:
                    telemetry.append(json.dumps({
                        "fold": r.fold.index, "id": inst.id, "call": call,
                        "latency_s": tel.latency_s,
                        "input_tokens": tel.input_tokens,
                        "output_tokens": tel.output_tokens,
                    }) + "\n")
    (out / "predictions.jsonl").write_text("".join(preds), encoding="utf-8")
    if telemetry:
        (out / "telemetry.jsonl").write_text("".join(telemetry), encoding="utf-8")
    tables = render_tables(records)
    for name, body in tables.items():
        (out / name).write_text(body, encoding="utf-8")
    return tables


def read_folds(run_dir) -> list[dict]:
    path = Path(run_dir) / "folds.jsonl"
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]

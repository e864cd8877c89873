"""Command-line entry point: ``syllogistic <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .extraction import ExtractionError, validate_structure
from .harness.config import ConfigError, RunConfig
from .harness.crossval import run_cv, run_fold
from .harness.dataset import DatasetError, load_dataset, save_dataset
from .harness.folds import plan_folds
from .harness.reporting import read_folds, render_tables, write_run
from .harness.scan import scan_import_forms
from .harness.synthetic import LexiconError, generate_synthetic, load_lexicon
from .logic import SemanticsMode, StructureError, decide_validity, form_of
from .metrics import CeMetricKind
from .parser import parse_syllogism
from .smtlib import Check, SolverUnavailable, emit_smtlib, external_verdict

EXIT_USAGE, EXIT_CONFIG, EXIT_IO, EXIT_DATA, EXIT_PARSE = 2, 3, 4, 5, 6

log = logging.getLogger("syllogistic")


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _structure_from_args(args):
    if args.structure:
        raw = args.structure
        if not raw.lstrip().startswith("{"):
            raw = _read(raw)
        try:
            return validate_structure(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise CliError(f"structure is not valid JSON: {exc.msg}", EXIT_DATA) from None
        except ExtractionError as exc:
            raise CliError(f"bad structure: {exc}", EXIT_DATA) from None
    text = args.text if args.text is not None else _read(args.text_file)
    result = parse_syllogism(text)
    if not result.ok:
        raise CliError(f"parse failed: {result.failure.value} {result.detail}".rstrip(), EXIT_PARSE)
    return result.structure


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _add_input(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="syllogism text")
    group.add_argument("--text-file", help="file holding syllogism text")
    group.add_argument("--structure", help="structure JSON (inline or a file path)")


def cmd_solve(args) -> int:
    structure = _structure_from_args(args)
    modes = list(SemanticsMode) if args.mode == "all" else [SemanticsMode(args.mode)]
    form = form_of(structure)
    if args.json:
        out = {"structure": structure.to_record(), "form": str(form) if form else None,
               "verdicts": {m.value: decide_validity(structure, m).value for m in modes}}
        if args.external:
            out["external"] = {m.value: external_verdict(structure, m).value for m in modes}
        print(json.dumps(out, sort_keys=True))
        return 0
    for m in modes:
        verdict = decide_validity(structure, m)
        line = verdict.value.capitalize() if len(modes) == 1 else f"{m.value}: {verdict.value.capitalize()}"
        if args.external:
            line += f" (external: {external_verdict(structure, m).value})"
        print(line)
    return 0


def cmd_parse(args) -> int:
    text = args.text if args.text is not None else _read(args.text_file)
    result = parse_syllogism(text)
    if result.ok:
        print(json.dumps(result.structure.to_record(), sort_keys=True))
        return 0
    print(json.dumps({"failure": result.failure.value, "detail": result.detail}, sort_keys=True))
    return EXIT_PARSE


def cmd_emit_smt(args) -> int:
    script = emit_smtlib(_structure_from_args(args), SemanticsMode(args.mode), Check(args.check))
    if args.output:
        Path(args.output).write_text(script, encoding="utf-8")
    else:
        sys.stdout.write(script)
    return 0


def cmd_gen(args) -> int:
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    data = generate_synthetic(lexicon, SemanticsMode(args.mode), args.seed, args.size)
    save_dataset(data, args.output)
    print(f"wrote {len(data)} instances to {args.output}")
    return 0


def _dataset_for(cfg: RunConfig):
    if cfg.dataset is not None:
        return load_dataset(cfg.dataset)
    lexicon = load_lexicon(cfg.lexicon) if cfg.lexicon else None
    return generate_synthetic(lexicon, SemanticsMode(cfg.mode), cfg.synthetic["seed"], cfg.synthetic["size"])


def cmd_scan_import(args) -> int:
    if args.dataset:
        data = load_dataset(args.dataset)
    else:
        data = generate_synthetic(None, SemanticsMode(args.mode), args.seed, args.size)
    report = scan_import_forms(data)
    print(json.dumps(report, indent=None if args.compact else 2, sort_keys=True))
    return 0


def _load_config(args) -> RunConfig:
    if args.config:
        cfg = RunConfig.load(args.config)
    else:
        cfg = RunConfig.from_dict({})
    if args.out:
        cfg.output_dir = args.out
    return cfg


def _run_kwargs(cfg: RunConfig) -> dict:
    chain, attempts = cfg.build_chain()
    return dict(
        ensemble_size=cfg.ensemble_size,
        strategies=cfg.strategy_objects(),
        mode=SemanticsMode(cfg.mode),
        chain=chain,
        attempts=attempts,
        ce_kind=CeMetricKind(cfg.ce_metric),
        tau=cfg.tau,
        solver=cfg.solver,
        parallelism=cfg.parallelism,
    )


def cmd_eval(args) -> int:
    cfg = _load_config(args)
    data = _dataset_for(cfg)
    plan = plan_folds(data, cfg.folds, cfg.inner, cfg.seed, cfg.stratified)
    if not 0 <= args.fold < len(plan.folds):
        raise CliError(f"fold must be in [0, {len(plan.folds) - 1}]", EXIT_USAGE)
    result = run_fold(plan.folds[args.fold], data, cfg.build_classifiers(), **_run_kwargs(cfg))
    tables = write_run(cfg.output_dir, cfg.dumps(), [result])
    sys.stdout.write(tables["summary.txt"])
    return 0


def cmd_cv(args) -> int:
    cfg = _load_config(args)
    data = _dataset_for(cfg)
    plan = plan_folds(data, cfg.folds, cfg.inner, cfg.seed, cfg.stratified)
    results = run_cv(plan, data, cfg.build_classifiers(), **_run_kwargs(cfg))
    tables = write_run(cfg.output_dir, cfg.dumps(), results)
    sys.stdout.write(tables["summary.txt"])
    return 0


def cmd_report(args) -> int:
    try:
        folds = read_folds(args.run)
    except OSError as exc:
        raise CliError(f"cannot read run artifacts in {args.run}: {exc.strerror}", EXIT_IO) from None
    tables = render_tables(folds)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, body in tables.items():
            (out / name).write_text(body, encoding="utf-8")
    sys.stdout.write(tables[args.table] if args.table else tables["summary.txt"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syllogistic", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    modes = [m.value for m in SemanticsMode]

    p = sub.add_parser("solve", help="decide validity of a syllogism")
    _add_input(p)
    p.add_argument("--mode", choices=modes + ["all"], default=SemanticsMode.SUBJECT_IMPORT.value)
    p.add_argument("--external", action="store_true", help="cross-check with z3")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("parse", help="parse text into a structure")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text")
    group.add_argument("--text-file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("emit-smt", help="write an SMT-LIB script")
    _add_input(p)
    p.add_argument("--mode", choices=modes, default=SemanticsMode.SUBJECT_IMPORT.value)
    p.add_argument("--check", choices=[c.value for c in Check], default=Check.ENTAILMENT.value)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_emit_smt)

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=None, help="balanced sample size (default: all forms)")
    p.add_argument("--mode", choices=modes, default=SemanticsMode.SUBJECT_IMPORT.value)
    p.add_argument("--lexicon", help="JSON lexicon with believable/unbelievable triples")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scan-import", help="report Darapti/Felapton instances")
    p.add_argument("--dataset", help="JSONL dataset (default: synthetic corpus)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--mode", choices=modes, default=SemanticsMode.SUBJECT_IMPORT.value)
    p.add_argument("--compact", action="store_true")
    p.set_defaults(func=cmd_scan_import)

    for name, func, helptext in (("eval", cmd_eval, "run one outer fold"), ("cv", cmd_cv, "run nested cross-validation")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="run config JSON (default: built-in offline config)")
        p.add_argument("--out", help="output directory (overrides config)")
        if name == "eval":
            p.add_argument("--fold", type=int, default=0)
        p.set_defaults(func=func)

    p = sub.add_parser("report", help="render tables from a run directory")
    p.add_argument("--run", required=True)
    p.add_argument("--out")
    p.add_argument("--table", choices=["strategies.tsv", "subgroups.tsv", "tiebreaker.tsv", "coalition.tsv",
                                       "extraction.tsv", "margins.tsv", "selection.tsv", "summary.txt"])
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DatasetError, LexiconError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except StructureError as exc:
        print(f"structure error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverUnavailable as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

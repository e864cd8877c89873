"""SMT-LIB v2 emission for syllogism checks, and an external-solver runner.

Layout of an emitted script (one item per line, no trailing spaces)::

    ; syllogism <check> <mode>
    (set-logic UF)
    (declare-sort Thing 0)
    (declare-fun |<term>| (Thing) Bool)          ; one per term, term order
    (assert <premise1>)
    (assert <premise2>)
    (assert (exists ((x Thing)) (|<term>| x)))    ; one per existence axiom
    (assert (not <conclusion>))                  ; entailment only
    (check-sat)

``unsat`` on a consistency script means the premises are contradictory;
``unsat`` on an entailment script means the syllogism is valid.
"""

from __future__ import annotations

import enum
import shutil
import subprocess

from .logic import (
    Proposition,
    PropositionType,
    SemanticsMode,
    StructureError,
    SyllogismStructure,
    Verdict,
    axiom_terms,
)

DEFAULT_TIMEOUT_MS = 5000


class Check(str, enum.Enum):
    PREMISE_CONSISTENCY = "consistency"
    ENTAILMENT = "entailment"


class SolverUnavailable(RuntimeError):
    pass


def _sym(term: str) -> str:
    if "|" in term or "\\" in term:
        raise StructureError(f"term {term!r} cannot be written as an SMT-LIB symbol")
    return f"|{term}|"


def formula(p: Proposition) -> str:
    s, q = _sym(p.subject), _sym(p.predicate)
    if p.ptype is PropositionType.A:
        return f"(forall ((x Thing)) (=> ({s} x) ({q} x)))"
    if p.ptype is PropositionType.E:
        return f"(forall ((x Thing)) (=> ({s} x) (not ({q} x))))"
    if p.ptype is PropositionType.I:
        return f"(exists ((x Thing)) (and ({s} x) ({q} x)))"
    return f"(exists ((x Thing)) (and ({s} x) (not ({q} x))))"


def emit_smtlib(
    s: SyllogismStructure,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    check: Check = Check.ENTAILMENT,
) -> str:
    if not isinstance(s, SyllogismStructure):
        raise StructureError(f"expected SyllogismStructure, got {type(s).__name__}")
    check = Check(check)
    lines = [
        f"; syllogism {check.value} {SemanticsMode(mode).value}",
        "(set-logic UF)",
        "(declare-sort Thing 0)",
    ]
    lines += [f"(declare-fun {_sym(t)} (Thing) Bool)" for t in s.terms]
    lines.append(f"(assert {formula(s.premise1)})")
    lines.append(f"(assert {formula(s.premise2)})")
    lines += [f"(assert (exists ((x Thing)) ({_sym(t)} x)))" for t in axiom_terms(s, mode)]
    if check is Check.ENTAILMENT:
        lines.append(f"(assert (not {formula(s.conclusion)}))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def _z3_module():
    try:
        import z3
    except ImportError:
        return None
    return z3


def run_external(script: str, timeout_ms: int = DEFAULT_TIMEOUT_MS) -> str:
    """Run ``script`` through z3 and return ``sat``, ``unsat`` or ``unknown``.

    Uses the z3 Python bindings when importable, else a ``z3`` binary on PATH.
    """
    z3 = _z3_module()
    if z3 is not None:
        solver = z3.Solver()
        solver.set("timeout", int(timeout_ms))
        solver.from_string(script)
        return str(solver.check())
    binary = shutil.which("z3")
    if binary is None:
        raise SolverUnavailable("neither the z3 module nor a z3 binary is available")
    try:
        proc = subprocess.run(
            [binary, "-in", "-smt2", f"-t:{int(timeout_ms)}"],
            input=script,
            capture_output=True,
            text=True,
            timeout=timeout_ms / 1000 + 5,
        )
    except subprocess.TimeoutExpired:
        return "unknown"
    out = proc.stdout.strip().splitlines()
    return out[-1] if out and out[-1] in ("sat", "unsat", "unknown") else "unknown"


def external_verdict(
    s: SyllogismStructure,
    mode: SemanticsMode = SemanticsMode.SUBJECT_IMPORT,
    timeout_ms: int = DEFAULT_TIMEOUT_MS,
) -> Verdict:
    """The two-step check carried out by an external solver."""
    first = run_external(emit_smtlib(s, mode, Check.PREMISE_CONSISTENCY), timeout_ms)
    if first != "sat":
        return Verdict.INDETERMINATE
    second = run_external(emit_smtlib(s, mode, Check.ENTAILMENT), timeout_ms)
    if second == "unsat":
        return Verdict.VALID
    if second == "sat":
        return Verdict.INVALID
    return Verdict.INDETERMINATE

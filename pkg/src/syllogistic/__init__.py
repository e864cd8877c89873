"""Syllogistic validity prediction with an LLM ensemble and a formal tiebreaker."""

from .logic import (
    Proposition,
    PropositionType,
    SemanticsMode,
    StructureError,
    SyllogismStructure,
    Verdict,
    check_sat,
    decide_validity,
    enumerate_forms,
)
from .parser import parse_syllogism
from .smtlib import emit_smtlib

__version__ = "0.1.0"

__all__ = [
    "Proposition",
    "PropositionType",
    "SemanticsMode",
    "StructureError",
    "SyllogismStructure",
    "Verdict",
    "check_sat",
    "decide_validity",
    "emit_smtlib",
    "enumerate_forms",
    "parse_syllogism",
]

"""Prompt templates. ``{syllogism}`` is the only placeholder."""

from __future__ import annotations

import enum


class PromptKind(str, enum.Enum):
    ZERO_SHOT = "zero-shot"
    FEW_SHOT = "few-shot"
    FEW_SHOT_COT = "few-shot-cot"
    SIMPLE_COT = "simple-cot"


ZERO_SHOT = """\
Determine if this syllogism is VALID.

VALID means: IF the premises were true, the conclusion MUST be true. Ignore whether premises are actually true in the real world.

Syllogism: {syllogism}

Answer with exactly one word: true or false"""

FEW_SHOT_EXAMPLES = (
    ('All dogs are mammals. All mammals are animals. Therefore, all dogs are animals.', True),
    ('All birds are dinosaurs. All sparrows are birds. Therefore, all sparrows are dinosaurs.', True),
    ('No fish are mammals. All sharks are fish. Therefore, no sharks are mammals.', True),
    ('All reptiles are cold-blooded. Some lizards are reptiles. Therefore, some lizards are cold-blooded.', True),
    ('All lawyers are professionals. All doctors are professionals. Therefore, all lawyers are doctors.', False),
    ('Some politicians are corrupt. All senators are politicians. Therefore, some senators are corrupt.', False),
    ('All rocks are edible. Some clouds are rocks. Therefore, all clouds are edible.', False),
)

FEW_SHOT = (
    """\
Determine if this syllogism is VALID (conclusion necessarily follows from premises).

VALIDITY RULES:
- "All A are B" + "All B are C" -> "All A are C" (valid)
- "No A are B" + "All C are A" -> "No C are B" (valid)
- "All A are B" + "Some C are A" -> "Some C are B" (valid)
- "All A are B" + "All C are B" -> "All A are C" (invalid, undistributed middle)
- "Some A are B" does NOT guarantee "All A are B"

EXAMPLES:
"""
    + "\n".join(f'"{text}" -> {str(label).lower()}' for text, label in FEW_SHOT_EXAMPLES)
    + """

Syllogism: {syllogism}

Answer with exactly one word: true or false"""
)

FEW_SHOT_COT = """\
Analyze this syllogism's logical VALIDITY.

IMPORTANT: VALID = conclusion MUST follow IF premises are assumed true. Ignore real-world facts.

RULES:
- "All A are B" + "All B are C" -> "All A are C" (valid chain)
- "No A are B" + "All C are A" -> "No C are B" (valid exclusion)
- "All A are B" + "Some C are A" -> "Some C are B" (Darii)
- "All A are B" + "All C are B" -> "All A are C" (invalid, undistributed middle)
- "Some A are B" means ONLY SOME, not all

WORKED EXAMPLES:

Example 1: "All cats are mammals. All mammals are animals. Therefore, all cats are animals."
- Structure: cats ⊆ mammals ⊆ animals
- Chain is complete. ANSWER: true

Example 2: "All unicorns fly. All pegasi are unicorns. Therefore, all pegasi fly."
- Premises are fantasy but structure is: pegasi ⊆ unicorns ⊆ fly
- Valid chain regardless of real-world truth. ANSWER: true

Example 3: "All athletes are healthy. All healthy people exercise. Therefore, all athletes exercise."
- Chain: athletes -> healthy -> exercise
- Chain is complete. ANSWER: true

Example 4: "All doctors are professionals. All lawyers are professionals. Therefore, all doctors are lawyers."
- "Professionals" appears as PREDICATE in both premises.
- Middle term is undistributed: we only know both are subsets of professionals, not that they overlap.
- Despite the believable surface, the structure is invalid. ANSWER: false

Example 5: "All cats are pets. All dogs are pets. Therefore, all cats are dogs."
- Both subsets of pets, but could be separate
- Undistributed middle. ANSWER: false

Example 6: "Some birds can fly. All penguins are birds. Therefore, some penguins can fly."
- "Some birds" doesn't tell us WHICH birds
- Cannot guarantee any penguin is in the flying subset. ANSWER: false

Syllogism: {syllogism}

Think through the structure briefly, then write your final answer as: ANSWER: true or ANSWER: false"""

SIMPLE_COT = """\
Is this syllogism logically VALID? (If premises were true, must conclusion be true?)

Syllogism: {syllogism}

First, identify the logical structure. Then determine if the conclusion necessarily follows.

End your response with exactly: ANSWER: true or ANSWER: false"""

TEMPLATES = {
    PromptKind.ZERO_SHOT: ZERO_SHOT,
    PromptKind.FEW_SHOT: FEW_SHOT,
    PromptKind.FEW_SHOT_COT: FEW_SHOT_COT,
    PromptKind.SIMPLE_COT: SIMPLE_COT,
}

EXTRACTION = """\
Extract the logical structure of this syllogism.

SYLLOGISM: {syllogism}

Proposition types:
- A: "All S are P" / "Every S is P"
- E: "No S are P"
- I: "Some S are P" / "At least one S is P"
- O: "Some S are not P"

The CONCLUSION follows "therefore/hence/thus/consequently/so".

Output ONLY this JSON (replace t1/t2/t3 with the exact term WORDS from the syllogism text):
{"terms": ["t1", "t2", "t3"],
"premise1": {"type": "A/E/I/O",
  "subject": "term <- exact word(s) from text",
  "predicate": "term <- exact word(s) from text"},
"premise2": {"type": "A/E/I/O",
  "subject": "term <- exact word(s) from text",
  "predicate": "term <- exact word(s) from text"},
"conclusion": {"type": "A/E/I/O",
  "subject": "term <- exact word(s) from text",
  "predicate": "term <- exact word(s) from text"}}"""

_PROP_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"type": "string", "enum": ["A", "E", "I", "O"]},
        "subject": {"type": "string"},
        "predicate": {"type": "string"},
    },
    "required": ["type", "subject", "predicate"],
    "additionalProperties": False,
}

EXTRACTION_SCHEMA = {
    "type": "object",
    "properties": {
        "terms": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3},
        "premise1": _PROP_SCHEMA,
        "premise2": _PROP_SCHEMA,
        "conclusion": _PROP_SCHEMA,
    },
    "required": ["terms", "premise1", "premise2", "conclusion"],
    "additionalProperties": False,
}


def _substitute(template: str, text: str) -> str:
    # str.replace rather than format(): the text may itself contain braces.
    return template.replace("{syllogism}", text)


def render_prompt(kind: PromptKind, syllogism_text: str) -> str:
    if not syllogism_text:
        raise ValueError("empty syllogism text")
    return _substitute(TEMPLATES[PromptKind(kind)], syllogism_text)


def render_extraction_prompt(syllogism_text: str) -> str:
    if not syllogism_text:
        raise ValueError("empty syllogism text")
    return _substitute(EXTRACTION, syllogism_text)

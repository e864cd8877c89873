"""Dataset records and the JSON-lines file format.

One JSON object per line with exactly these fields::

    {"id": "s001", "text": "...", "valid": true,
     "plausibility": "believable", "pair_id": "p001"}

``pair_id`` may be null or omitted.  Blank lines are skipped.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path

PLAUSIBILITY = ("believable", "unbelievable")
FIELDS = {"id", "text", "valid", "plausibility", "pair_id"}


class DatasetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class Subgroup(str, enum.Enum):
    VB = "VB"
    VU = "VU"
    IB = "IB"
    IU = "IU"

    @classmethod
    def of(cls, valid: bool, believable: bool) -> "Subgroup":
        return cls(("V" if valid else "I") + ("B" if believable else "U"))

    @property
    def congruent(self) -> bool:
        """Believability agrees with validity (VB, IU)."""
        return self in (Subgroup.VB, Subgroup.IU)


@dataclass(frozen=True)
class DatasetInstance:
    id: str
    text: str
    valid: bool
    plausibility: str
    pair_id: str | None = None

    def __post_init__(self):
        if self.plausibility not in PLAUSIBILITY:
            raise DatasetError(f"plausibility must be one of {PLAUSIBILITY}, got {self.plausibility!r}")

    @property
    def believable(self) -> bool:
        return self.plausibility == "believable"

    @property
    def subgroup(self) -> Subgroup:
        return Subgroup.of(self.valid, self.believable)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "valid": self.valid,
            "plausibility": self.plausibility,
            "pair_id": self.pair_id,
        }


def instance_from_record(rec, line: int | None = None) -> DatasetInstance:
    if not isinstance(rec, dict):
        raise DatasetError("record is not a JSON object", line)
    unknown = set(rec) - FIELDS
    if unknown:
        raise DatasetError(f"unknown fields {sorted(unknown)}", line)
    for name in ("id", "text", "valid", "plausibility"):
        if name not in rec:
            raise DatasetError(f"missing field {name!r}", line)
    if not isinstance(rec["id"], str) or not rec["id"]:
        raise DatasetError("id must be a nonempty string", line)
    if not isinstance(rec["text"], str) or not rec["text"].strip():
        raise DatasetError("text must be a nonempty string", line)
    if not isinstance(rec["valid"], bool):
        raise DatasetError("valid must be a boolean", line)
    pair_id = rec.get("pair_id")
    if pair_id is not None and not isinstance(pair_id, str):
        raise DatasetError("pair_id must be a string or null", line)
    try:
        return DatasetInstance(rec["id"], rec["text"], rec["valid"], rec["plausibility"], pair_id)
    except DatasetError as exc:
        raise DatasetError(str(exc), line) from None


def load_dataset(path) -> list[DatasetInstance]:
    out: list[DatasetInstance] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"invalid JSON ({exc.msg})", lineno) from None
            inst = instance_from_record(rec, lineno)
            if inst.id in seen:
                raise DatasetError(f"duplicate id {inst.id!r}", lineno)
            seen.add(inst.id)
            out.append(inst)
    return out


def save_dataset(instances, path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(json.dumps(inst.to_record(), ensure_ascii=False) + "\n")

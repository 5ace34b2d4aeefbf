"""Stage records, the pipeline report, its JSON form and a plain-text transcript."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..groebner import same_up_to_scaling
from ..poly import Poly

CONCLUSION_VERIFIED = "reducible-factorization-verified"

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["case", "stages", "conclusion", "stats"],
    "properties": {
        "case": {"type": "string", "enum": ["I", "II"]},
        "stages": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "computed"],
                "properties": {
                    "name": {"type": "string"},
                    "computed": {"type": "string"},
                    "expected": {"type": "string"},
                    "match": {"type": "boolean"},
                    "substitution": {"type": "array", "items": {"type": "string"}},
                    "reference": {"type": "string"},
                    "note": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "conclusion": {"type": ["string", "null"]},
        "stats": {
            "type": "object",
            "required": ["terms_peak", "pairs_processed", "wall_ms"],
            "properties": {
                "terms_peak": {"type": "integer", "minimum": 0},
                "pairs_processed": {"type": "integer", "minimum": 0},
                "wall_ms": {"type": "integer", "minimum": 0},
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
        "mismatches": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


@dataclass
class StageRecord:
    name: str
    computed: str
    expected: str | None = None
    match: bool | None = None
    substitution: list[str] = field(default_factory=list)
    reference: str = ""
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "computed": self.computed}
        if self.expected is not None:
            d["expected"] = self.expected
            d["match"] = bool(self.match)
        if self.substitution:
            d["substitution"] = list(self.substitution)
        if self.reference:
            d["reference"] = self.reference
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class PipelineReport:
    case: str
    stages: list[StageRecord] = field(default_factory=list)
    conclusion: str | None = None
    stats: dict[str, int] = field(
        default_factory=lambda: {"terms_peak": 0, "pairs_processed": 0, "wall_ms": 0})
    notes: list[str] = field(default_factory=list)

    def record(self, name: str, computed, expected=None, *, substitution=(), reference="",
               note="") -> StageRecord:
        """Add a stage; polynomials are compared by exact canonical form."""
        match = None
        if expected is not None:
            match = computed == expected
            if not match and isinstance(computed, Poly) and isinstance(expected, Poly) \
                    and same_up_to_scaling(computed, expected):
                extra = "equal only up to a nonzero rational scalar; counted as a mismatch"
                note = f"{note}; {extra}" if note else extra
                self.notes.append(f"warning: {name}: {extra}")
        rec = StageRecord(name, str(computed), None if expected is None else str(expected),
                          match, [str(s) for s in substitution], reference, note)
        self.stages.append(rec)
        return rec

    @property
    def checked(self) -> list[StageRecord]:
        return [s for s in self.stages if s.expected is not None]

    @property
    def matched(self) -> int:
        return sum(1 for s in self.checked if s.match)

    @property
    def mismatches(self) -> list[StageRecord]:
        return [s for s in self.checked if not s.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def finish(self, conclusion: str) -> None:
        self.conclusion = conclusion if self.ok else None

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "case": self.case,
            "stages": [s.to_dict() for s in self.stages],
            "conclusion": self.conclusion,
            "stats": {k: int(v) for k, v in self.stats.items()},
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if self.mismatches:
            d["mismatches"] = [f"{s.name}: computed {s.computed}, expected {s.expected}"
                               for s in self.mismatches]
        return d

    def to_json(self, *, include_timing: bool = True) -> str:
        d = self.to_dict()
        if not include_timing:
            d["stats"]["wall_ms"] = 0
        return json.dumps(d, indent=2, sort_keys=False) + "\n"

    def transcript(self) -> str:
        lines = [f"Case {self.case}"]
        for s in self.stages:
            if s.expected is None:
                status = "info"
            else:
                status = "MATCH" if s.match else "MISMATCH"
            head = f"[{status}] {s.name}"
            if s.reference:
                head += f"  ({s.reference})"
            lines.append(head)
            for sub in s.substitution:
                lines.append(f"    with {sub}")
            if s.note:
                lines.append(f"    note: {s.note}")
            if s.expected is not None and not s.match:
                lines.append(f"    computed: {s.computed}")
                lines.append(f"    expected: {s.expected}")
        lines.append(f"matched {self.matched}/{len(self.checked)} identities")
        for n in self.notes:
            lines.append(f"note: {n}")
        lines.append(f"conclusion: {self.conclusion or 'not reached'}")
        return "\n".join(lines) + "\n"


def validate_report(data: dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError when ``data`` does not fit the report schema."""
    import jsonschema
    jsonschema.validate(data, REPORT_SCHEMA)

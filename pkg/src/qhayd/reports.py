"""Pass/fail reports with witnesses.

Logical failures never raise: each named check produces an item, and a
failing item carries the first offending basis multi-index together with
both sides' coefficient vectors so the discrepancy can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

__all__ = ["Witness", "CheckItem", "CheckReport"]


@dataclass(frozen=True)
class Witness:
    location: tuple
    lhs: tuple
    rhs: tuple
    note: str = ""


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    witness: Optional[Witness] = None


@dataclass
class CheckReport:
    items: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def add(self, name: str, passed: bool, witness: Optional[Witness] = None):
        self.items.append(CheckItem(name, passed, witness))

    def add_ok(self, name: str):
        self.add(name, True)

    def add_fail(self, name: str, location: tuple, lhs, rhs, note: str = ""):
        self.add(name, False, Witness(tuple(location), tuple(lhs), tuple(rhs), note))

    def extend(self, other: "CheckReport"):
        self.items.extend(other.items)

    def failures(self):
        return [item for item in self.items if not item.passed]

    def item(self, name: str) -> CheckItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def to_json(self, scalar_format=str) -> list:
        out = []
        for it in self.items:
            entry = {"name": it.name, "passed": it.passed}
            if it.witness is not None:
                entry["witness"] = {
                    "location": list(it.witness.location),
                    "lhs": [scalar_format(x) for x in it.witness.lhs],
                    "rhs": [scalar_format(x) for x in it.witness.rhs],
                }
                if it.witness.note:
                    entry["witness"]["note"] = it.witness.note
            out.append(entry)
        return out

    def format_text(self, scalar_format=str) -> str:
        lines = []
        for it in self.items:
            if it.passed:
                lines.append(f"PASS  {it.name}")
            else:
                w = it.witness
                loc = ",".join(str(i) for i in w.location) if w else "?"
                lines.append(f"FAIL  {it.name} @ ({loc})")
                if w is not None:
                    lines.append(f"      lhs = [{', '.join(scalar_format(x) for x in w.lhs)}]")
                    lines.append(f"      rhs = [{', '.join(scalar_format(x) for x in w.rhs)}]")
                    if w.note:
                        lines.append(f"      note: {w.note}")
        return "\n".join(lines)

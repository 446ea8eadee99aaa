"""Structured verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool | None  # None marks a check outside the hypotheses of the claim
    detail: str = ""
    witness: Any = None

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool | None, detail: str = "", witness: Any = None) -> Check:
        c = Check(name, passed, detail, witness)
        self.checks.append(c)
        return c

    def extend(self, other: Report, prefix: str = "") -> Report:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.witness))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = [self.title] if self.title else []
        for c in self.checks:
            line = f"{c.status} {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.passed is False and c.witness is not None:
                lines.append(f"    witness: {json.dumps(c.witness, ensure_ascii=False, default=str)}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

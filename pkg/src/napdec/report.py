"""Audit reports: a name, a count of checked cases, and the violations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, **violation) -> None:
        self.violations.append(violation)

    def merge(self, other: "Report") -> "Report":
        # counts add, violation lists concatenate in argument order
        out = Report(self.name, self.checked + other.checked,
                     self.violations + other.violations, dict(self.summary))
        for key, value in other.summary.items():
            if isinstance(value, int) and isinstance(out.summary.get(key), int):
                out.summary[key] += value
            else:
                out.summary.setdefault(key, value)
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violation_count": len(self.violations),
            "violations": self.violations,
            "summary": self.summary,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

"""Report-valued checks shared by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    where: Any = None

    def to_dict(self) -> dict:
        out = {"rule": self.rule, "message": self.message}
        if self.where is not None:
            out["where"] = _jsonable(self.where)
        return out


@dataclass
class Report:
    """Outcome of one named check: how many instances were tested, what failed."""

    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, rule: str, message: str, where: Any = None) -> None:
        self.violations.append(Violation(rule, message, where))

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def to_dict(self, max_violations: int = 20) -> dict:
        out = {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [v.to_dict() for v in self.violations[:max_violations]],
        }
        if len(self.violations) > max_violations:
            out["violations_truncated"] = len(self.violations) - max_violations
        if self.details:
            out["details"] = _jsonable(self.details)
        return out

    def __str__(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        lines = [f"{self.name}: {status} ({self.checked} checked)"]
        for v in self.violations[:5]:
            lines.append(f"  [{v.rule}] {v.message}")
        return "\n".join(lines)


class ConfigurationError(ValueError):
    """Raised when structure data fails validation; carries the reports."""

    def __init__(self, reports: list[Report]):
        self.reports = reports
        msgs = [f"[{v.rule}] {v.message}" for r in reports for v in r.violations]
        super().__init__("; ".join(msgs) or "invalid configuration")


def _jsonable(obj):
    from fractions import Fraction

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    return str(obj)

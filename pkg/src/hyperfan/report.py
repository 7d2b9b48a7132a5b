from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str
    witness: Any = None


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, condition: str, detail: str, witness: Any = None) -> None:
        self.violations.append(Violation(condition, detail, witness))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def conditions(self) -> set:
        return {v.condition for v in self.violations}

    def lines(self) -> list[str]:
        if self.valid:
            return ["valid"]
        out = ["invalid"]
        for v in self.violations:
            line = f"  [{v.condition}] {v.detail}"
            if v.witness is not None:
                line += f" (witness: {_fmt(v.witness)})"
            out.append(line)
        return out


def _fmt(x) -> str:
    from fractions import Fraction

    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    if isinstance(x, (set, frozenset)):
        return "{" + ", ".join(_fmt(y) for y in sorted(x, key=str)) + "}"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in x.items()) + "}"
    return str(x)

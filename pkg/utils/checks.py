"""Pass/fail reports shared by every verification command.

A Report renders as deterministic plain text, one line per check:

    # <title>
    <name> PASS
    <name> PASS (note)
    <name> FAIL witness=<expr>
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[str] = None
    note: Optional[str] = None

    def to_line(self) -> str:
        if self.passed:
            return f"{self.name} PASS" + (f" ({self.note})" if self.note else "")
        line = f"{self.name} FAIL"
        if self.witness is not None:
            line += f" witness={self.witness}"
        if self.note:
            line += f" ({self.note})"
        return line


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    header: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, witness: Optional[str] = None, note: Optional[str] = None) -> bool:
        self.checks.append(Check(name, bool(passed), witness, note))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    def get(self, name: str) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_text(self) -> str:
        lines = [f"# {self.title}"] + list(self.header) + [c.to_line() for c in self.checks]
        return "\n".join(lines) + "\n"

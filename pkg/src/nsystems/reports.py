"""Pass/fail reports for the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self, prefix: str = "") -> str:
        status = "PASS" if self.passed else "FAIL"
        name = f"{prefix}{self.name}" if prefix else self.name
        return f"{status}\t{name}\t{self.detail}"


@dataclass
class CheckReport:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "CheckReport"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def lines(self, prefix: str = "") -> list:
        return [c.line(prefix) for c in self.checks]

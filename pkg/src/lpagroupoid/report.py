from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Union


@dataclass
class Report:
    """Outcome of a verification suite: pass/fail plus the first witnesses."""

    name: str
    passed: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    max_failures = 20

    def check(self, ok: bool, witness: Union[str, Callable[[], str]]) -> bool:
        """Count one check; ``witness`` may be a thunk, formatted only on failure."""
        self.checks += 1
        if not ok:
            self.fail(witness() if callable(witness) else witness)
        return ok

    def fail(self, witness: str) -> None:
        self.passed = False
        if len(self.failures) < self.max_failures:
            self.failures.append(witness)

    def note(self, line: str) -> None:
        self.notes.append(line)

    def merge(self, other: Report) -> None:
        self.checks += other.checks
        if not other.passed:
            self.passed = False
        for w in other.failures:
            if len(self.failures) < self.max_failures:
                self.failures.append(f"{other.name}: {w}")

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def lines(self) -> list[str]:
        out = [f"{self.name}: {self.status} ({self.checks} checks)"]
        out += [f"  {n}" for n in self.notes]
        out += [f"  witness: {w}" for w in self.failures]
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": list(self.failures),
            "notes": list(self.notes),
            "data": self.data,
        }

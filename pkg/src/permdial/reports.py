"""Violation reports returned by validators and identity checkers.

A report that carries no violations is a pass.  Failing witnesses are the
primary debugging artifact for hand-entered data, so validators keep them
(with a configurable cap for the large operator checks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import format_scalar


@dataclass(frozen=True)
class Violation:
    """One failed identity instance: which law, at which basis indices."""

    identity: str
    indices: tuple[int, ...]
    discrepancy: tuple  # lhs - rhs as an exact coordinate vector

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "indices": list(self.indices),
            "discrepancy": [format_scalar(c) for c in self.discrepancy],
        }


@dataclass
class Report:
    """Outcome of checking a family of identities over a whole basis."""

    subject: str
    checked: int = 0
    violation_count: int = 0
    violations: list[Violation] = field(default_factory=list)
    witness_cap: int | None = None

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def add(self, identity: str, indices: tuple[int, ...], discrepancy) -> None:
        self.violation_count += 1
        if self.witness_cap is None or len(self.violations) < self.witness_cap:
            self.violations.append(Violation(identity, tuple(indices), tuple(discrepancy)))

    def merge(self, other: "Report") -> None:
        self.checked += other.checked
        for v in other.violations:
            self.add(v.identity, v.indices, v.discrepancy)
        # counts beyond the recorded witnesses still accumulate
        self.violation_count += other.violation_count - len(other.violations)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "checked": self.checked,
            "passed": self.passed,
            "violation_count": self.violation_count,
            "witnesses": [v.to_json() for v in self.violations],
        }

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({self.violation_count} violations)"
        return f"{self.subject}: {state} [{self.checked} checks]"

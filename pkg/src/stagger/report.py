"""Shared pass/fail report structure for the randomized suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List


@dataclass
class CheckResult:
    passes: int = 0
    violations: List[str] = field(default_factory=list)

    def record(self, ok: bool, witness: str) -> None:
        if ok:
            self.passes += 1
        else:
            self.violations.append(witness)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    samples: int
    mode: str = ""
    checks: Dict[str, CheckResult] = field(default_factory=dict)

    def check(self, label: str) -> CheckResult:
        return self.checks.setdefault(label, CheckResult())

    @property
    def ok(self) -> bool:
        return all(not c.violations for c in self.checks.values())

    def violation_count(self) -> int:
        return sum(len(c.violations) for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "mode": self.mode,
            "ok": self.ok,
            "checks": {
                label: {
                    "passes": c.passes,
                    "violations": list(c.violations),
                }
                for label, c in sorted(self.checks.items())
            },
        }

    def summary_lines(self) -> List[str]:
        lines = []
        for label, c in sorted(self.checks.items()):
            status = "ok" if not c.violations else "FAIL(%d)" % len(c.violations)
            lines.append("%-28s passes=%-5d %s" % (label, c.passes, status))
            for v in c.violations[:3]:
                lines.append("    counterexample: %s" % v)
        return lines

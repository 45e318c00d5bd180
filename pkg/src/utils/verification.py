"""
Check reports for the slope, functoriality and axiom suites
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .logger import Logger


@dataclass
class Violation:
    """One counterexample to a checked property"""

    check: str
    message: str
    seed: Optional[int] = None
    document: Optional[Dict[str, Any]] = None

    def __str__(self):
        suffix = f" (seed {self.seed})" if self.seed is not None else ""
        return f"{self.check}: {self.message}{suffix}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"check": self.check, "message": self.message}
        if self.seed is not None:
            data["seed"] = self.seed
        if self.document is not None:
            data["document"] = self.document
        return data


@dataclass
class CheckReport:
    """Result of a reporting operation: passes unless a violation was recorded"""

    name: str
    trials: int = 0
    checks: int = 0
    heuristic: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def expect(self, condition: bool, check: str, message: str, **context) -> bool:
        self.checks += 1
        if not condition:
            self.add_violation(Violation(check, message, **context))
        return condition

    def add_violation(self, violation: Violation) -> None:
        Logger.get_logger(__name__).warning(f"{self.name}: {violation}")
        self.violations.append(violation)

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.trials += other.trials
        self.checks += other.checks
        self.heuristic += other.heuristic
        self.violations.extend(other.violations)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "trials": self.trials,
            "checks": self.checks,
            "heuristic": self.heuristic,
            "violations": [v.to_dict() for v in self.violations],
        }

    def __str__(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f"{status} - {self.name}: {self.checks} checks, {len(self.violations)} violations"

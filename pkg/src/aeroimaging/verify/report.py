"""Diagnostic report types."""

from dataclasses import dataclass, replace
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one numerical check.

    A check passes when its measured ``value`` is strictly below ``tolerance``.
    ``runtime`` (seconds) is filled in by the suite.
    """

    name: str
    value: float
    tolerance: float
    details: str = ""
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        """True if the measured value is below the tolerance."""
        return self.value < self.tolerance

    def timed(self, runtime: float) -> "CheckResult":
        """Copy with the measured runtime."""
        return replace(self, runtime=runtime)


@dataclass(frozen=True)
class DiagnosticReport:
    """Results of a verify run, one entry per check in suite order."""

    checks: tuple[CheckResult, ...]
    seed: int

    @property
    def passed(self) -> bool:
        """True if every check passed."""
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> tuple[CheckResult, ...]:
        """Checks that did not pass."""
        return tuple(c for c in self.checks if not c.passed)

    def get(self, name: str) -> CheckResult:
        """Look up a check by name.

        Raises:
            KeyError: If no check has that name.
        """
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_summary(self) -> dict[str, Any]:
        """Machine-readable summary (runtimes omitted so files are reproducible)."""
        return {
            "passed": self.passed,
            "seed": self.seed,
            "checks": [
                {
                    "name": c.name,
                    "value": c.value,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "details": c.details,
                }
                for c in self.checks
            ],
        }

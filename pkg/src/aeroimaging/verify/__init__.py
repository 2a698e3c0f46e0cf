"""Verification suite: oracles, numerical checks and the diagnostic report."""

from aeroimaging.verify.report import CheckResult, DiagnosticReport
from aeroimaging.verify.suite import CHECK_NAMES, DEFAULT_TOLERANCES, run_suite

__all__ = [
    "CHECK_NAMES",
    "DEFAULT_TOLERANCES",
    "CheckResult",
    "DiagnosticReport",
    "run_suite",
]

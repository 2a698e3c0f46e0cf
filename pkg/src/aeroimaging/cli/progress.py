"""Live progress line for the verify suite."""

from collections.abc import Iterator
from contextlib import contextmanager

from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TaskID,
    TextColumn,
)

from aeroimaging.verify.report import CheckResult


class ProgressMixin:
    """Adds a check-by-check progress line to a handler.

    Shows ``[spinner] last check (failures) [bar] done/total`` while the suite
    runs; the line disappears once the suite is collected.
    """

    _console: Console
    _checks: Progress | None = None
    _checks_task: TaskID | None = None
    _failures: int = 0

    @contextmanager
    def _tracking_checks(self, total: int) -> Iterator[None]:
        """Show the progress line for ``total`` checks."""
        columns = (
            SpinnerColumn(),
            TextColumn("{task.fields[last]}"),
            TextColumn("[red]{task.fields[failures]}[/red]"),
            BarColumn(),
            MofNCompleteColumn(),
        )
        self._failures = 0
        with Progress(*columns, console=self._console, transient=True) as progress:
            self._checks = progress
            self._checks_task = progress.add_task(
                "checks", total=total, last="starting", failures=""
            )
            try:
                yield
            finally:
                self._checks = None
                self._checks_task = None

    def _on_check(self, result: CheckResult) -> None:
        if self._checks is None or self._checks_task is None:
            return
        if not result.passed:
            self._failures += 1
        failures = f"{self._failures} failed" if self._failures else ""
        self._checks.update(self._checks_task, advance=1, last=result.name, failures=failures)

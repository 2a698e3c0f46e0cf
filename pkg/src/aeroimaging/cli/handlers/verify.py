"""Handler for the ``verify`` command."""

import argparse
from pathlib import Path

from rich.console import Console

from aeroimaging.cli.formatting import checks_table
from aeroimaging.cli.progress import ProgressMixin
from aeroimaging.cli.utils import load_scenario, scenario_label
from aeroimaging.config.constants import Constants
from aeroimaging.config.settings import Settings
from aeroimaging.formats.report_exporter import ReportExporter
from aeroimaging.verify.suite import CHECK_NAMES, run_suite


class VerifyHandler(ProgressMixin):
    """Runs the verify suite, shows the results and writes the report files."""

    def __init__(self, console: Console, settings: Settings) -> None:
        """Initialize handler.

        Args:
            console: Rich console for output.
            settings: Runtime settings (worker threads).
        """
        self._console = console
        self._settings = settings
        self._exporter = ReportExporter()

    def handle(self, args: argparse.Namespace) -> int:
        """Exit 0 if every check passes, 1 otherwise."""
        scenario = load_scenario(args)
        with self._tracking_checks(len(CHECK_NAMES)):
            report = run_suite(scenario, self._settings.workers, on_result=self._on_check)

        self._console.print(checks_table(report))
        out: Path = args.out
        self._exporter.export(report, out, scenario_label(args))
        self._console.print(f"[dim]{Constants.MSG_REPORT_WRITTEN.format(path=out)}[/dim]")

        count = len(report.checks)
        if report.passed:
            self._console.print(f"[green]{Constants.MSG_VERIFY_PASSED.format(count=count)}[/green]")
            return Constants.EXIT_OK
        failed = len(report.failed)
        self._console.print(
            f"[red]{Constants.MSG_VERIFY_FAILED.format(failed=failed, count=count)}[/red]"
        )
        return Constants.EXIT_FAILED

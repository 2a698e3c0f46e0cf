"""Formatting functions for CLI display."""

from rich.table import Table

from aeroimaging.formats.report_exporter import format_scientific
from aeroimaging.verify.report import DiagnosticReport


def format_status(passed: bool) -> str:
    """Coloured PASS/FAIL marker."""
    return "[green]PASS[/green]" if passed else "[bold red]FAIL[/bold red]"


def format_runtime(seconds: float) -> str:
    """Format a check runtime.

    Args:
        seconds: Wall-clock time in seconds.

    Returns:
        Formatted string like "12 ms" or "3.4 s".
    """
    if seconds < 1.0:
        return f"{seconds * 1000:.0f} ms"
    return f"{seconds:.1f} s"


def checks_table(report: DiagnosticReport) -> Table:
    """Rich table with one row per check in suite order."""
    table = Table(title=f"Verify (seed {report.seed})")
    table.add_column("Check", style="cyan")
    table.add_column("Value", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Status", justify="center")
    table.add_column("Time", justify="right", style="dim")
    for check in report.checks:
        table.add_row(
            check.name,
            format_scientific(check.value),
            format_scientific(check.tolerance),
            format_status(check.passed),
            format_runtime(check.runtime),
        )
    return table

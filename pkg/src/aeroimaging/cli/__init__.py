"""CLI module."""

from aeroimaging.cli.formatting import checks_table, format_runtime, format_status

__all__ = [
    "checks_table",
    "format_runtime",
    "format_status",
]

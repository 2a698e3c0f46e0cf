"""Text and JSON export of verify reports."""

import math
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from aeroimaging.config.constants import Constants
from aeroimaging.utils.json_utils import JsonUtils
from aeroimaging.verify.report import DiagnosticReport

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"


def format_scientific(value: float) -> str:
    """Three-digit scientific notation; non-finite values spelled out."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.3e}"


class ReportExporter:
    """Writes ``report.txt`` (rendered from a template) and ``summary.json``."""

    def __init__(self, templates_dir: Path = TEMPLATES_DIR) -> None:
        """Initialize exporter.

        Args:
            templates_dir: Directory holding ``report.txt.j2``.
        """
        self._env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            autoescape=False,
            keep_trailing_newline=True,
        )
        self._env.filters["sci"] = format_scientific

    def render(self, report: DiagnosticReport, scenario_label: str) -> str:
        """Render the text report."""
        template = self._env.get_template(Constants.REPORT_TEMPLATE)
        return template.render(
            scenario=scenario_label,
            seed=report.seed,
            passed=report.passed,
            passed_count=len(report.checks) - len(report.failed),
            checks=report.checks,
        )

    def export(self, report: DiagnosticReport, output_dir: Path, scenario_label: str) -> list[Path]:
        """Write both report files into ``output_dir``.

        Args:
            report: Verify results.
            output_dir: Destination directory; created if missing.
            scenario_label: How the scenario is named in the text report.

        Returns:
            Paths of the written files.
        """
        output_dir.mkdir(parents=True, exist_ok=True)
        text_path = output_dir / Constants.REPORT_TEXT_NAME
        text_path.write_text(self.render(report, scenario_label), encoding="utf-8")
        summary_path = output_dir / Constants.REPORT_SUMMARY_NAME
        JsonUtils.write_json(summary_path, report.to_summary())
        return [text_path, summary_path]

"""Suite report rendering."""

import json
from pathlib import Path
from typing import List, Optional

import yaml
from pydantic import ValidationError

from ..model.config import load_document
from ..model.report import ReportFormat, SuiteReport, SuiteResult
from ..utils.errors import ConfigError
from ..utils.logger import get_logger

logger = get_logger(__name__)

MAX_ROWS = 40


def _number(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.3e}"


class SuiteReporter:
    """Formats a SuiteReport as text, JSON or YAML; output depends only on the report."""

    def render(self, report: SuiteReport, output_format: ReportFormat) -> str:
        data = report.model_dump(mode="json")
        if output_format == ReportFormat.JSON:
            return json.dumps(data, indent=2, default=str)
        elif output_format == ReportFormat.YAML:
            return yaml.dump(data, default_flow_style=False, sort_keys=False)
        else:
            return self._format_text_report(report)

    def _format_text_report(self, report: SuiteReport) -> str:
        lines = []
        lines.append("=" * 80)
        lines.append("DIFFSPACE VERIFICATION REPORT")
        lines.append("=" * 80)
        lines.append(f"Seed: {report.seed}")
        lines.append(f"Config digest: {report.config_digest}")
        lines.append(f"Status: {'PASSED' if report.passed else 'FAILED'}")
        lines.append("")

        lines.append("SUMMARY")
        lines.append("-" * 40)
        for result in report.results:
            status = "pass" if result.passed else "FAIL"
            lines.append(
                f"{result.suite.value:<18} {status:<5} max residual {_number(result.max_residual)}"
                f"  (tol {result.tolerance:.1e}, {result.samples} samples)"
            )
        lines.append("")

        for result in report.results:
            lines.extend(self._format_result(result))
        return "\n".join(lines)

    def _format_result(self, result: SuiteResult) -> List[str]:
        lines = [result.suite.value.upper(), "-" * 40]
        if result.notes:
            for note in result.notes:
                lines.append(f"  {note}")
        if result.rows:
            keys = list(result.rows[0])
            lines.append("  " + " | ".join(keys))
            for row in result.rows[:MAX_ROWS]:
                lines.append("  " + " | ".join(_cell(row.get(key)) for key in keys))
            if len(result.rows) > MAX_ROWS:
                lines.append(f"  ... and {len(result.rows) - MAX_ROWS} more rows")
        if not result.notes and not result.rows:
            lines.append("  (no details)")
        lines.append("")
        return lines


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "(" + ", ".join(_cell(v) for v in value) + ")"
    return "-" if value is None else str(value)


def load_report(path: Path) -> SuiteReport:
    """Read a saved JSON or YAML report."""
    data = load_document(Path(path))
    try:
        report = SuiteReport.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path} is not a suite report: {e}") from e
    logger.debug(f"Loaded report with {len(report.results)} suite result(s) from {path}")
    return report

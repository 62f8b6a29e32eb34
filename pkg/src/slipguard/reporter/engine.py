"""Report engine - dispatches cost reports to the requested format."""

from __future__ import annotations

from pathlib import Path

from slipguard.exceptions import ReportError
from slipguard.models.replay import CostReport
from slipguard.reporter.base import BaseReporter
from slipguard.reporter.csv_reporter import CSVReporter
from slipguard.reporter.text_reporter import TextReporter

REPORTERS: dict[str, type[BaseReporter]] = {
    "csv": CSVReporter,
    "text": TextReporter,
}


def emit_report(report: CostReport, fmt: str = "text", output_dir: Path | None = None) -> tuple[str, list[Path]]:
    """Render ``report`` in ``fmt``; with ``output_dir`` also write the CSV tables.

    Returns the rendering and the files written.
    """
    reporter_cls = REPORTERS.get(fmt)
    if reporter_cls is None:
        raise ReportError(f"unknown report format {fmt!r}")
    written = CSVReporter().write(report, output_dir) if output_dir is not None else []
    return reporter_cls().render(report), written

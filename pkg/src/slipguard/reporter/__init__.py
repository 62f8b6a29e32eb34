"""Report generation module."""

from slipguard.reporter.csv_reporter import CSVReporter
from slipguard.reporter.engine import emit_report
from slipguard.reporter.terminal import TerminalReporter
from slipguard.reporter.text_reporter import TextReporter

__all__ = ["CSVReporter", "TerminalReporter", "TextReporter", "emit_report"]

"""Base class for report renderers."""

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path

from slipguard.exceptions import ReportError
from slipguard.models.replay import CostReport


class BaseReporter(ABC):
    """Abstract base class for cost report renderers."""

    @abstractmethod
    def render(self, report: CostReport) -> str:
        """Serialize a report to text."""

    @staticmethod
    def _write_text(path: Path, content: str) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
        except OSError as exc:
            raise ReportError(f"{path}: cannot write report ({exc.strerror or exc})") from exc
        return path

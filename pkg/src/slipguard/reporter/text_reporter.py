"""Aligned plain-text renderings through Jinja2 templates."""

from __future__ import annotations

from pathlib import Path

import jinja2

from slipguard.models.attack import GameOutcome
from slipguard.models.replay import CostReport
from slipguard.models.slippage import PredictionReport
from slipguard.reporter.base import BaseReporter
from slipguard.reporter.formatting import sci, size

TEMPLATE_DIR = Path(__file__).parent / "templates"


class TextReporter(BaseReporter):
    """Renders cost tables, prediction grids, advice and attack summaries as text."""

    def __init__(self) -> None:
        self.env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(str(TEMPLATE_DIR)),
            autoescape=False,
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
            undefined=jinja2.StrictUndefined,
        )
        self.env.filters["sci"] = sci
        self.env.filters["size"] = size

    def render(self, report: CostReport) -> str:
        template = self.env.get_template("costs.txt.j2")
        return template.render(report=report)

    def render_predictions(self, reports: list[PredictionReport]) -> str:
        windows = sorted({r.window for r in reports})
        targets = sorted({r.failure_prob_target for r in reports})
        cells = {(r.failure_prob_target, r.window): r for r in reports}
        template = self.env.get_template("predictions.txt.j2")
        return template.render(
            reports=reports,
            windows=windows,
            targets=targets,
            cells=cells,
            pool=reports[0].pool_id if reports else "",
            size_usd=reports[0].size_usd if reports else 0.0,
        )

    def render_attack(self, outcome: GameOutcome) -> str:
        return self.env.get_template("attack.txt.j2").render(outcome=outcome, plan=outcome.plan)

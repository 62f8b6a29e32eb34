"""CSV renderings of replay costs, predictions and advice."""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from slipguard.constants import COSTS_HEADER, COSTS_REPORT_FILE, RATIO_HEADER, RATIO_REPORT_FILE
from slipguard.models.attack import GameOutcome
from slipguard.models.replay import CostReport
from slipguard.models.slippage import PredictionReport, SlippageAdvice
from slipguard.reporter.base import BaseReporter
from slipguard.reporter.formatting import sci, size

PREDICTION_HEADER = [
    "pool",
    "size_usd",
    "p",
    "window",
    "mean_abs",
    "vol_abs",
    "pred_mean",
    "rel_error",
    "exceedance_rate",
    "evaluated_blocks",
]
ADVICE_HEADER = [
    "chosen",
    "s_a",
    "s_r",
    "regime",
    "failure_probability",
    "tail_expectation",
    "window_size",
    "low_confidence",
]
ATTACK_HEADER = [
    "binding_constraint",
    "input_x",
    "frontrun_output_y",
    "backrun_output_x",
    "profit_x",
    "victim_realized_y",
    "victim_loss_x",
]


def _to_csv(rows: list[list[str]], header: list[str]) -> str:
    return pd.DataFrame(rows, columns=header).to_csv(index=False, lineterminator="\n")


def costs_csv(report: CostReport) -> str:
    rows = [
        [
            row.pool,
            size(row.size_usd),
            row.policy.value,
            sci(row.mean_frac_cost),
            str(row.failed_trades),
            sci(row.avg_failed_attempts),
            str(row.attacked_trades),
        ]
        for row in report.rows
    ]
    return _to_csv(rows, COSTS_HEADER)


def ratio_csv(report: CostReport) -> str:
    rows = [[r.pool, size(r.size_usd), sci(r.cost_ratio)] for r in report.ratios]
    return _to_csv(rows, RATIO_HEADER)


def predictions_csv(reports: list[PredictionReport]) -> str:
    rows = [
        [
            r.pool_id,
            size(r.size_usd),
            f"{r.failure_prob_target:g}",
            str(r.window),
            sci(r.mean_abs),
            sci(r.vol_abs),
            sci(r.pred_mean),
            sci(r.rel_error),
            sci(r.exceedance_rate),
            str(r.evaluated_blocks),
        ]
        for r in reports
    ]
    return _to_csv(rows, PREDICTION_HEADER)


def advice_csv(advice: SlippageAdvice) -> str:
    diag = advice.diagnostics
    row = [
        sci(advice.chosen),
        sci(advice.s_a),
        sci(advice.s_r),
        advice.regime.value,
        sci(diag.failure_probability),
        sci(diag.tail_expectation),
        str(diag.window_size),
        str(diag.low_confidence).lower(),
    ]
    return _to_csv([row], ADVICE_HEADER)


def attack_csv(outcome: GameOutcome) -> str:
    plan = outcome.plan
    row = [
        plan.binding_constraint.value,
        sci(plan.input_x),
        sci(plan.frontrun_output_y),
        sci(plan.backrun_output_x),
        sci(plan.profit_x),
        sci(outcome.victim_realized_y),
        sci(outcome.victim_loss_x),
    ]
    return _to_csv([row], ATTACK_HEADER)


class CSVReporter(BaseReporter):
    """Writes ``report_costs.csv`` and ``report_ratio.csv``."""

    def render(self, report: CostReport) -> str:
        return costs_csv(report)

    def write(self, report: CostReport, output_dir: Path) -> list[Path]:
        return [
            self._write_text(output_dir / COSTS_REPORT_FILE, costs_csv(report)),
            self._write_text(output_dir / RATIO_REPORT_FILE, ratio_csv(report)),
        ]
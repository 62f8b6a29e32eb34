"""Tests for report renderings."""

from __future__ import annotations

from pathlib import Path

import pytest
from rich.console import Console

from slipguard.exceptions import ReportError
from slipguard.game.sandwich import execute_sandwich, optimal_attack
from slipguard.models.pool import TradeIntent
from slipguard.models.replay import CostReport, CostRow, Policy, RatioRow
from slipguard.models.slippage import AdviceDiagnostics, PredictionReport, Regime, SlippageAdvice
from slipguard.reporter import CSVReporter, TerminalReporter, TextReporter, emit_report
from slipguard.reporter.csv_reporter import advice_csv, attack_csv, costs_csv, predictions_csv, ratio_csv
from slipguard.reporter.formatting import sci, size


@pytest.fixture
def report() -> CostReport:
    return CostReport(
        base_fee_usd=4.0,
        block_range=(100, 200),
        rows=[
            CostRow(pool="P", size_usd=10.0, policy=Policy.BASELINE, mean_frac_cost=0.005, attacked_trades=3),
            CostRow(
                pool="P",
                size_usd=10.0,
                policy=Policy.OURS,
                failed_trades=1,
                avg_failed_attempts=2.0,
            ),
        ],
        ratios=[RatioRow(pool="P", size_usd=10.0, cost_ratio=float("inf"))],
    )


class TestFormatting:

    def test_sci(self) -> None:
        assert sci(0.005) == "5.000E-03"
        assert sci(0.0) == "0.000E+00"
        assert sci(float("inf")) == "inf"

    def test_size(self) -> None:
        assert size(100_000.0) == "100000"
        assert size(12.5) == "12.5"


class TestCSV:

    def test_costs(self, report: CostReport) -> None:
        assert costs_csv(report).splitlines() == [
            "pool,size_usd,policy,mean_frac_cost,failed_trades,avg_failed_attempts,attacked_trades",
            "P,10,baseline,5.000E-03,0,0.000E+00,3",
            "P,10,ours,0.000E+00,1,2.000E+00,0",
        ]

    def test_ratio_infinite(self, report: CostReport) -> None:
        assert ratio_csv(report) == "pool,size_usd,cost_ratio\nP,10,inf\n"

    def test_empty_report_keeps_header(self) -> None:
        assert ratio_csv(CostReport()) == "pool,size_usd,cost_ratio\n"

    def test_predictions(self) -> None:
        row = PredictionReport(pool_id="P", size_usd=100.0, failure_prob_target=0.05, window=200)
        lines = predictions_csv([row]).splitlines()
        assert lines[0].startswith("pool,size_usd,p,window")
        assert lines[1].startswith("P,100,0.05,200,")

    def test_advice(self) -> None:
        advice = SlippageAdvice(
            chosen=0.06,
            s_a=0.002,
            s_r=0.06,
            regime=Regime.UNAVOIDABLE,
            diagnostics=AdviceDiagnostics(failure_probability=0.4, window_size=10),
        )
        assert advice_csv(advice).splitlines()[1] == (
            "6.000E-02,2.000E-03,6.000E-02,unavoidable,4.000E-01,0.000E+00,10,false"
        )

    def test_attack(self, worked_intent: TradeIntent) -> None:
        outcome = execute_sandwich(worked_intent, optimal_attack(worked_intent))
        fields = attack_csv(outcome).splitlines()[1].split(",")
        assert fields[0] == "slippage_bound"
        assert float(fields[1]) == pytest.approx(0.529, abs=1e-3)
        assert float(fields[4]) == pytest.approx(0.106, abs=1e-3)

    def test_writer(self, report: CostReport, tmp_path: Path) -> None:
        written = CSVReporter().write(report, tmp_path / "out")
        assert [p.name for p in written] == ["report_costs.csv", "report_ratio.csv"]
        assert written[0].read_text(encoding="utf-8") == costs_csv(report)


class TestText:

    def test_costs_table(self, report: CostReport) -> None:
        text = TextReporter().render(report)
        assert "base fee $4" in text
        assert "bloques 100-199" in text
        assert "5.000E-03" in text
        assert "inf" in text

    def test_predictions_grid(self) -> None:
        reports = [
            PredictionReport(pool_id="P", size_usd=100.0, failure_prob_target=0.1, window=w, pred_mean=-1e-4)
            for w in (20, 100)
        ]
        text = TextReporter().render_predictions(reports)
        assert "w=20" in text
        assert "w=100" in text
        assert "-1.000E-04" in text

    def test_attack_without_profit(self, worked_intent: TradeIntent) -> None:
        outcome = execute_sandwich(worked_intent, optimal_attack(worked_intent, base_fee_x=1.0))
        text = TextReporter().render_attack(outcome)
        assert "no_attack" in text
        assert "sin ataque" in text


class TestTerminal:

    def test_advice_panel(self) -> None:
        console = Console(record=True, width=120)
        advice = SlippageAdvice(
            chosen=0.001,
            s_a=0.002,
            s_r=0.0,
            regime=Regime.ATTACK_FREE,
            diagnostics=AdviceDiagnostics(low_confidence=True, notes=["ventana corta"]),
        )
        TerminalReporter(console).print_advice(advice)
        output = console.export_text()
        assert "attack_free" in output
        assert "confianza baja" in output


class TestEmitReport:

    def test_text_writes_csv_tables(self, report: CostReport, tmp_path: Path) -> None:
        rendering, written = emit_report(report, "text", tmp_path)
        assert "Costes fraccionales" in rendering
        assert sorted(p.name for p in written) == ["report_costs.csv", "report_ratio.csv"]

    def test_without_directory(self, report: CostReport) -> None:
        rendering, written = emit_report(report, "csv")
        assert rendering == costs_csv(report)
        assert written == []

    def test_unknown_format(self, report: CostReport) -> None:
        with pytest.raises(ReportError):
            emit_report(report, "html")

"""Terminal reporter using Rich for console summaries."""

from __future__ import annotations

from pathlib import Path

from rich.console import Console
from rich.panel import Panel

from slipguard.models.slippage import Regime, SlippageAdvice
from slipguard.reporter.formatting import sci


class TerminalReporter:
    """Prints advice panels and report file listings."""

    def __init__(self, console: Console | None = None) -> None:
        self.console = console or Console()

    def print_advice(self, advice: SlippageAdvice) -> None:
        """Print the chosen tolerance with both bounds and the window diagnostics."""
        color = "green" if advice.regime is Regime.ATTACK_FREE else "yellow"
        diag = advice.diagnostics
        lines = [
            f"[bold]slippage elegido:[/] {sci(advice.chosen)}",
            f"s_a = {sci(advice.s_a)}   s_r = {sci(advice.s_r)}",
            f"p(fallo) = {sci(diag.failure_probability)}   "
            f"E(s~ | fallo) = {sci(diag.tail_expectation)}   ventana = {diag.window_size}",
        ]
        if diag.low_confidence:
            lines.append("[yellow]confianza baja: ventana corta sin excedencias[/]")
        lines.extend(f"[dim]{note}[/]" for note in diag.notes)
        self.console.print(
            Panel("\n".join(lines), title=f"Regimen: {advice.regime.value}", border_style=color)
        )

    def print_written(self, paths: list[Path], title: str = "Reportes Generados") -> None:
        if not paths:
            return
        self.console.print(
            Panel(
                "\n".join(f"[link=file://{path}]{path}[/link]" for path in paths),
                title=f"[green]{title}[/green]",
                border_style="green",
            )
        )

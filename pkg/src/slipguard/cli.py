"""SlipGuard CLI - Main entry point."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn

from slipguard import __version__
from slipguard.config import SlipGuardConfig, load_config
from slipguard.constants import EXIT_DATA, EXIT_INGESTION, EXIT_OK, EXIT_USAGE
from slipguard.exceptions import (
    ConfigError,
    DomainError,
    IngestionError,
    NotEnoughDataError,
    SlipGuardError,
)
from slipguard.models.dataset import FixtureSpec

app = typer.Typer(
    name="slipguard",
    help="SlipGuard - Analisis de ataques sandwich y eleccion de slippage en pools CPMM.",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


def version_callback(value: bool) -> None:
    if value:
        console.print(f"[bold]SlipGuard[/bold] v{__version__}")
        raise typer.Exit()


def _setup_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False, rich_tracebacks=debug)],
        force=True,
    )


@app.callback()
def main(
    ctx: typer.Context,
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-V",
        help="Mostrar version.",
        callback=version_callback,
        is_eager=True,
    ),
    data_dir: Optional[Path] = typer.Option(None, "--data-dir", "-d", help="Directorio del dataset."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semilla para los datos sinteticos."),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Formato de salida: text o csv."),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="Archivo de configuracion."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Salida detallada."),
    debug: bool = typer.Option(False, "--debug", help="Trazas de depuracion."),
) -> None:
    """SlipGuard - Protege swaps de ataques sandwich sin pagar de mas en reintentos."""
    if fmt is not None and fmt.lower() not in {"text", "csv"}:
        raise typer.BadParameter(f"formato desconocido '{fmt}' (text o csv)", param_hint="--format")
    _setup_logging(verbose, debug)
    ctx.obj = {
        "data_dir": data_dir,
        "seed": seed,
        "output_format": fmt.lower() if fmt else None,
        "config_file": config,
        "verbose": verbose or None,
        "debug": debug or None,
    }


def _load(ctx: typer.Context, **overrides: object) -> SlipGuardConfig:
    opts = dict(ctx.obj or {})
    config_file = opts.pop("config_file", None)
    return load_config(project_dir=Path.cwd(), config_file=config_file, **opts, **overrides)


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """Map library errors to the CLI exit-code contract."""
    try:
        yield
    except NotEnoughDataError as exc:
        err_console.print(f"[red]Datos insuficientes:[/red] {exc}")
        raise typer.Exit(EXIT_DATA) from exc
    except IngestionError as exc:
        err_console.print(f"[red]Error de ingesta:[/red] {exc}")
        raise typer.Exit(EXIT_INGESTION) from exc
    except (DomainError, ConfigError, ValidationError) as exc:
        err_console.print(f"[red]Parametro invalido:[/red] {exc}")
        raise typer.Exit(EXIT_USAGE) from exc
    except SlipGuardError as exc:
        err_console.print(f"[red]Error:[/red] {exc}")
        raise typer.Exit(1) from exc


@app.command()
def attack(
    ctx: typer.Context,
    x: float = typer.Option(..., "--x", help="Reserva de X en el pool."),
    y: float = typer.Option(..., "--y", help="Reserva de Y en el pool."),
    fee: float = typer.Option(0.003, "--fee", help="Comision del pool (0.003 en Uniswap V2)."),
    victim_in: float = typer.Option(..., "--victim-in", help="Entrada X de la victima."),
    slippage: float = typer.Option(1.0, "--slippage", "-s", help="Tolerancia de la victima en (0, 1]."),
    base_fee_x: float = typer.Option(0.0, "--base-fee-x", help="Base fee por transaccion, en X."),
) -> None:
    """Calcular el sandwich optimo contra un swap X->Y y su efecto en la victima."""
    with _exit_on_error():
        cfg = _load(ctx)
    if not 0.0 < slippage <= 1.0:
        raise typer.BadParameter(f"debe estar en (0, 1], se recibio {slippage:g}", param_hint="--slippage")
    exit_code = asyncio.run(_run_attack(cfg, x, y, fee, victim_in, slippage, base_fee_x))
    raise typer.Exit(exit_code)


@app.command()
def advise(
    ctx: typer.Context,
    pool: str = typer.Option(..., "--pool", "-p", help="Identificador del pool."),
    block: int = typer.Option(..., "--block", "-b", help="Bloque en el que se cotiza el swap."),
    size_usd: float = typer.Option(..., "--size-usd", help="Salida deseada, en USD."),
    base_fee_usd: Optional[float] = typer.Option(None, "--base-fee-usd", help="Base fee por transaccion, en USD."),
    window: Optional[int] = typer.Option(None, "--window", "-w", help="Bloques de historia para el percentil."),
    gas_fraction: Optional[float] = typer.Option(None, "--gas-fraction", help="Gas de un swap fallido (l)."),
    base_fee_step: Optional[float] = typer.Option(None, "--base-fee-step", help="Subida maxima de base fee (m)."),
) -> None:
    """Recomendar una tolerancia de slippage para un swap."""
    with _exit_on_error():
        cfg = _load(
            ctx,
            window=window,
            failed_tx_gas_fraction=gas_fraction,
            base_fee_step=base_fee_step,
            base_fee_usd=base_fee_usd,
        )
    exit_code = asyncio.run(_run_advise(cfg, pool, block, size_usd))
    raise typer.Exit(exit_code)


@app.command()
def predict(
    ctx: typer.Context,
    pool: str = typer.Option(..., "--pool", "-p", help="Identificador del pool."),
    sizes: list[float] = typer.Option([100.0], "--size-usd", help="Tamanos en USD (repetible)."),
    ps: list[float] = typer.Option([0.01, 0.05, 0.1], "--p", help="Probabilidades de fallo objetivo (repetible)."),
    windows: list[int] = typer.Option([200, 2000], "--window", "-w", help="Ventanas de historia (repetible)."),
    start: Optional[int] = typer.Option(None, "--start", help="Primer bloque evaluado."),
    end: Optional[int] = typer.Option(None, "--end", help="Bloque final evaluado (exclusivo)."),
) -> None:
    """Evaluar el predictor de slippage por percentil historico."""
    with _exit_on_error():
        cfg = _load(ctx)
    if start is not None and end is not None and start >= end:
        raise typer.BadParameter(f"rango vacio [{start}, {end})", param_hint="--start/--end")
    for p in ps:
        if not 0.0 < p < 1.0:
            raise typer.BadParameter(f"debe estar en (0, 1), se recibio {p:g}", param_hint="--p")
    exit_code = asyncio.run(_run_predict(cfg, pool, sizes, ps, windows, start, end))
    raise typer.Exit(exit_code)


@app.command()
def replay(
    ctx: typer.Context,
    base_fees: Optional[list[float]] = typer.Option(
        None, "--base-fee-usd", help="Base fee en USD; repetir para un barrido."
    ),
    sizes: Optional[list[float]] = typer.Option(None, "--size-usd", help="Tamanos en USD (repetible)."),
    pools: Optional[list[str]] = typer.Option(None, "--pool", "-p", help="Pools a simular (por defecto todos)."),
    start: Optional[int] = typer.Option(None, "--start", help="Primer bloque simulado."),
    end: Optional[int] = typer.Option(None, "--end", help="Bloque final simulado (exclusivo)."),
    baseline: Optional[float] = typer.Option(None, "--baseline-slippage", help="Tolerancia fija de referencia."),
    window: Optional[int] = typer.Option(None, "--window", "-w", help="Bloques de historia para el percentil."),
    max_retries: Optional[int] = typer.Option(None, "--max-retries", help="Reintentos antes de abandonar."),
    workers: Optional[int] = typer.Option(None, "--workers", help="Hilos para simular celdas."),
    output_dir: Optional[Path] = typer.Option(None, "--output", "-o", help="Directorio de reportes."),
) -> None:
    """Simular costes de la politica propuesta frente a la tolerancia fija."""
    if start is not None and end is not None and start >= end:
        raise typer.BadParameter(f"rango vacio [{start}, {end})", param_hint="--start/--end")
    with _exit_on_error():
        cfg = _load(
            ctx,
            trade_sizes_usd=sizes or None,
            baseline_slippage=baseline,
            window=window,
            max_retries=max_retries,
            max_workers=workers,
            output_dir=output_dir,
        )
    exit_code = asyncio.run(_run_replay(cfg, base_fees or [cfg.base_fee_usd], pools or None, start, end))
    raise typer.Exit(exit_code)


@app.command()
def fixture(
    ctx: typer.Context,
    blocks: int = typer.Option(5000, "--blocks", "-n", help="Numero de bloques."),
    volatility: float = typer.Option(0.0, "--volatility", help="Desviacion del log-precio por bloque."),
    drift: float = typer.Option(0.0, "--drift", help="Deriva del log-precio por bloque."),
    no_trade_prob: float = typer.Option(0.0, "--no-trade-prob", help="Probabilidad de bloque sin cambios."),
    pool_id: str = typer.Option("USDC-WETH", "--pool", "-p", help="Identificador del pool."),
    reserve_x: float = typer.Option(20_000_000.0, "--reserve-x", help="Reserva inicial de X."),
    reserve_y: float = typer.Option(10_000.0, "--reserve-y", help="Reserva inicial de Y."),
    fee: float = typer.Option(0.003, "--fee", help="Comision del pool."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directorio destino (por defecto --data-dir)."),
) -> None:
    """Generar un dataset sintetico reproducible a partir de una semilla."""
    with _exit_on_error():
        cfg = _load(ctx)
    with _exit_on_error():
        try:
            spec = FixtureSpec(
                blocks=blocks,
                volatility=volatility,
                drift=drift,
                seed=cfg.seed,
                no_trade_prob=no_trade_prob,
                pool_id=pool_id,
                reserve_x=reserve_x,
                reserve_y=reserve_y,
                fee=fee,
            )
        except ValidationError as exc:
            raise DomainError(str(exc)) from exc
    exit_code = asyncio.run(_run_fixture(spec, out or cfg.data_dir))
    raise typer.Exit(exit_code)


# ── Pipeline runners ──────────────────────────────────────────────


async def _run_attack(
    cfg: SlipGuardConfig,
    x: float,
    y: float,
    fee: float,
    victim_in: float,
    slippage: float,
    base_fee_x: float,
) -> int:
    from slipguard.game.sandwich import execute_sandwich, optimal_attack
    from slipguard.models.pool import PoolState, TradeIntent
    from slipguard.reporter.csv_reporter import attack_csv
    from slipguard.reporter.text_reporter import TextReporter

    with _exit_on_error():
        try:
            intent = TradeIntent(
                input_x=victim_in,
                slippage=slippage,
                pool=PoolState(reserve_x=x, reserve_y=y, fee=fee),
            )
        except ValidationError as exc:
            raise DomainError(str(exc)) from exc
        plan = optimal_attack(intent, base_fee_x=base_fee_x)
        outcome = execute_sandwich(intent, plan)

    if cfg.output_format == "csv":
        typer.echo(attack_csv(outcome), nl=False)
    else:
        typer.echo(TextReporter().render_attack(outcome), nl=False)
    return EXIT_OK


async def _run_advise(cfg: SlipGuardConfig, pool_id: str, block: int, size_usd: float) -> int:
    from slipguard.amm.cpmm import swap_input_for_output
    from slipguard.data.loader import load_dataset
    from slipguard.models.pool import TradeIntent
    from slipguard.policy.slippage_policy import choose_slippage
    from slipguard.replay.market import PoolMarket
    from slipguard.reporter.csv_reporter import advice_csv
    from slipguard.reporter.terminal import TerminalReporter
    from slipguard.stats.slippage import block_slippage_series

    with _exit_on_error():
        if size_usd <= 0.0:
            raise DomainError(f"--size-usd must be positive, got {size_usd:g}")
        dataset = load_dataset(cfg.data_dir, cfg.price_gap_limit, cfg.default_fee)
        market = PoolMarket.from_dataset(dataset, pool_id)
        if block not in market:
            raise NotEnoughDataError(
                f"block {block} outside {pool_id} data [{market.first_block}, {market.last_block}]"
            )
        history = block_slippage_series(
            market.states, size_usd, market.price_y_usd, pool_id=pool_id, window=cfg.window
        )
        pool = market.state_at(block)
        price_y = market.price_y_usd(block)
        intent = TradeIntent(
            input_x=swap_input_for_output(pool, size_usd / price_y),
            slippage=cfg.baseline_slippage,
            base_fee_y=cfg.base_fee_usd / price_y,
            pool=pool,
        )
        advice = choose_slippage(intent, history, block, cfg.policy_params())

    if cfg.output_format == "csv":
        typer.echo(advice_csv(advice), nl=False)
    else:
        TerminalReporter(console).print_advice(advice)
    return EXIT_OK


async def _run_predict(
    cfg: SlipGuardConfig,
    pool_id: str,
    sizes: list[float],
    ps: list[float],
    windows: list[int],
    start: int | None,
    end: int | None,
) -> int:
    from slipguard.data.loader import load_dataset
    from slipguard.replay.market import PoolMarket
    from slipguard.reporter.csv_reporter import predictions_csv
    from slipguard.reporter.text_reporter import TextReporter
    from slipguard.stats.slippage import block_slippage_series, prediction_grid

    with _exit_on_error():
        dataset = load_dataset(cfg.data_dir, cfg.price_gap_limit, cfg.default_fee)
        market = PoolMarket.from_dataset(dataset, pool_id)
        evaluation_range = (
            start if start is not None else market.first_block,
            end if end is not None else market.last_block + 1,
        )
        grids = []
        for size_usd in sorted(sizes):
            if size_usd <= 0.0:
                raise DomainError(f"--size-usd must be positive, got {size_usd:g}")
            history = block_slippage_series(
                market.states, size_usd, market.price_y_usd, pool_id=pool_id, window=max(windows)
            )
            grids.append(prediction_grid(history, ps, windows, evaluation_range))

    if cfg.output_format == "csv":
        typer.echo(predictions_csv([r for grid in grids for r in grid]), nl=False)
    else:
        text = TextReporter()
        typer.echo("\n".join(text.render_predictions(grid) for grid in grids), nl=False)
    return EXIT_OK


async def _run_replay(
    cfg: SlipGuardConfig,
    base_fees: list[float],
    pools: list[str] | None,
    start: int | None,
    end: int | None,
) -> int:
    from slipguard.data.loader import load_dataset
    from slipguard.replay.engine import run_sweep
    from slipguard.reporter.engine import emit_report
    from slipguard.reporter.formatting import size
    from slipguard.reporter.terminal import TerminalReporter

    if cfg.output_format == "text":
        console.print(Panel(
            f"[bold]SlipGuard[/bold] v{__version__}\n"
            f"Dataset: [cyan]{cfg.data_dir}[/cyan]",
            title="Replay",
            border_style="blue",
        ))

    with _exit_on_error():
        for fee in base_fees:
            if fee <= 0.0:
                raise DomainError(f"--base-fee-usd must be positive, got {fee:g}")

        dataset = load_dataset(cfg.data_dir, cfg.price_gap_limit, cfg.default_fee)
        pool_ids = pools or dataset.pool_ids
        if not pool_ids:
            raise NotEnoughDataError(f"no pools in {cfg.data_dir}")
        for pool_id in pool_ids:
            if pool_id not in dataset.snapshots:
                raise NotEnoughDataError(f"unknown pool {pool_id!r}")
        bounds = [dataset.block_bounds(pool_id) for pool_id in pool_ids]
        block_range = (
            start if start is not None else min(lo for lo, _ in bounds),
            end if end is not None else max(hi for _, hi in bounds) + 1,
        )
        config = cfg.replay_config(block_range, base_fee_usd=base_fees[0], pools=pool_ids)

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=err_console,
            transient=True,
            disable=cfg.output_format != "text",
        ) as progress:
            task = progress.add_task(
                f"Simulando {len(pool_ids)} pools, {len(config.trade_sizes_usd)} tamanos...", total=None
            )
            reports = await run_sweep(config, dataset, base_fees)
            progress.update(task, description="[green]Simulacion completa")

        sweep = len(base_fees) > 1
        for report in reports:
            output_dir = cfg.output_dir / f"base_fee_{size(report.base_fee_usd)}" if sweep else cfg.output_dir
            rendering, written = emit_report(report, cfg.output_format, output_dir)
            typer.echo(rendering, nl=False)
            if cfg.output_format == "text":
                TerminalReporter(console).print_written(written)

    return EXIT_OK


async def _run_fixture(spec: FixtureSpec, out: Path) -> int:
    from slipguard.data.fixtures import generate_fixture, write_dataset
    from slipguard.reporter.terminal import TerminalReporter

    with _exit_on_error():
        dataset = generate_fixture(spec)
        written = write_dataset(dataset, out)

    TerminalReporter(console).print_written(written, title="Dataset Generado")
    return EXIT_OK


if __name__ == "__main__":
    app()

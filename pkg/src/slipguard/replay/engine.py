"""Replay engine - runs every (pool, size, policy) cell and aggregates costs."""

from __future__ import annotations

import logging
import math
from functools import partial

import anyio

from slipguard.exceptions import NotEnoughDataError
from slipguard.models.dataset import Dataset
from slipguard.models.replay import CostReport, CostRow, Policy, RatioRow, ReplayConfig, TradeRecord
from slipguard.models.slippage import SlippageHistory
from slipguard.replay.market import PoolMarket
from slipguard.replay.trade import simulate_trade
from slipguard.stats.slippage import block_slippage_series
from slipguard.utils.async_helpers import gather_in_threads

logger = logging.getLogger(__name__)

HistoryKey = tuple[str, float]


def cost_ratio(baseline: float, ours: float) -> float:
    """baseline / ours, infinite when only ours is free and 1 when both are."""
    if ours == 0.0:
        return 1.0 if baseline == 0.0 else math.inf
    return baseline / ours


def evaluated_blocks(market: PoolMarket, history: SlippageHistory, config: ReplayConfig) -> list[int]:
    """Blocks in range with enough prior history and a following block to execute in."""
    start, end = config.block_range
    needed = config.policy_params.min_observations
    return [
        block
        for block in range(max(start, market.first_block), min(end, market.last_block))
        if history.index_before(block) >= needed
    ]


def _aggregate(pool_id: str, size_usd: float, policy: Policy, records: list[TradeRecord]) -> CostRow:
    done = [r for r in records if not r.abandoned]
    failed = [r for r in done if r.failed_attempts > 0]
    return CostRow(
        pool=pool_id,
        size_usd=size_usd,
        policy=policy,
        mean_frac_cost=sum(r.fractional_cost for r in done) / len(done) if done else 0.0,
        failed_trades=len(failed),
        avg_failed_attempts=sum(r.failed_attempts for r in failed) / len(failed) if failed else 0.0,
        attacked_trades=sum(1 for r in done if r.attacked),
        abandoned_trades=len(records) - len(done),
        simulated_trades=len(records),
    )


class ReplayEngine:
    """Replays configured trade sizes at every evaluated block under each policy."""

    def __init__(self, config: ReplayConfig) -> None:
        self.config = config

    def markets(self, dataset: Dataset) -> list[PoolMarket]:
        pool_ids = self.config.pools or dataset.pool_ids
        return [PoolMarket.from_dataset(dataset, pool_id) for pool_id in sorted(pool_ids)]

    def histories(self, markets: list[PoolMarket]) -> dict[HistoryKey, SlippageHistory]:
        window = self.config.policy_params.window
        return {
            (market.pool_id, size): block_slippage_series(
                market.states, size, market.price_y_usd, pool_id=market.pool_id, window=window
            )
            for market in markets
            for size in sorted(self.config.trade_sizes_usd)
        }

    def _run_cell(
        self,
        market: PoolMarket,
        history: SlippageHistory,
        blocks: list[int],
        size_usd: float,
        policy: Policy,
    ) -> CostRow:
        records = [simulate_trade(b, size_usd, policy, market, history, self.config) for b in blocks]
        row = _aggregate(market.pool_id, size_usd, policy, records)
        if row.abandoned_trades:
            logger.warning(
                "%s $%g %s: %d trades abandoned",
                market.pool_id,
                size_usd,
                policy.value,
                row.abandoned_trades,
            )
        return row

    async def run(
        self,
        dataset: Dataset,
        histories: dict[HistoryKey, SlippageHistory] | None = None,
    ) -> CostReport:
        """Simulate all cells concurrently and reduce them in (pool, size, policy) order."""
        markets = self.markets(dataset)
        if histories is None:
            histories = self.histories(markets)

        cells = []
        for market in markets:
            for size in sorted(self.config.trade_sizes_usd):
                history = histories[(market.pool_id, size)]
                blocks = evaluated_blocks(market, history, self.config)
                if not blocks:
                    raise NotEnoughDataError(
                        f"{market.pool_id} ${size:g}: no block in {self.config.block_range} has "
                        f"{self.config.policy_params.min_observations} prior observations"
                    )
                for policy in sorted(self.config.policies, key=lambda p: p.value):
                    cells.append(partial(self._run_cell, market, history, blocks, size, policy))

        logger.info("Replaying %d cells over %d pools", len(cells), len(markets))
        rows = await gather_in_threads(cells, limit=self.config.max_workers)

        ratios: list[RatioRow] = []
        by_key = {(r.pool, r.size_usd, r.policy): r for r in rows}
        for market in markets:
            for size in sorted(self.config.trade_sizes_usd):
                ours = by_key.get((market.pool_id, size, Policy.OURS))
                baseline = by_key.get((market.pool_id, size, Policy.BASELINE))
                if ours and baseline:
                    ratios.append(
                        RatioRow(
                            pool=market.pool_id,
                            size_usd=size,
                            cost_ratio=cost_ratio(baseline.mean_frac_cost, ours.mean_frac_cost),
                        )
                    )

        return CostReport(
            base_fee_usd=self.config.base_fee_usd,
            block_range=self.config.block_range,
            rows=rows,
            ratios=ratios,
        )


def run_replay(config: ReplayConfig, dataset: Dataset) -> CostReport:
    """Synchronous entry point for :meth:`ReplayEngine.run`."""
    return anyio.run(ReplayEngine(config).run, dataset)


async def run_sweep(config: ReplayConfig, dataset: Dataset, base_fees_usd: list[float]) -> list[CostReport]:
    """One report per base fee; slippage histories are computed once and shared."""
    engine = ReplayEngine(config)
    histories = engine.histories(engine.markets(dataset))
    reports = []
    for fee in base_fees_usd:
        fee_config = config.model_copy(update={"base_fee_usd": fee})
        reports.append(await ReplayEngine(fee_config).run(dataset, histories))
    return reports

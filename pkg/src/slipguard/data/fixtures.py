"""Seeded synthetic pool histories in the ingestion file format."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from slipguard.constants import (
    POOL_COLUMNS,
    POOLS_FILE,
    PRICE_COLUMNS,
    PRICES_FILE,
    SNAPSHOT_COLUMNS,
    SNAPSHOTS_FILE,
)
from slipguard.exceptions import DomainError, ReportError
from slipguard.models.dataset import (
    Dataset,
    FixtureSpec,
    PoolInfo,
    PoolSnapshotRecord,
    PriceFeed,
    PriceFeedRecord,
)

logger = logging.getLogger(__name__)


def generate_fixture(spec: FixtureSpec) -> Dataset:
    """Geometric random walk on the Y reserve at a constant reserve product.

    Each block trades with probability ``1 - no_trade_prob``; a trading block
    multiplies ``reserve_y`` by ``exp(drift + volatility * z)`` and sets
    ``reserve_x = k / reserve_y``. Token X is priced at ``price_x_usd`` and
    token Y at the pool's spot price. A trader's per-block slippage then has
    mean magnitude of about ``1.6 * volatility``.
    """
    if spec.volatility < 0.0:
        raise DomainError(f"volatility must be non-negative, got {spec.volatility!r}")

    rng = np.random.default_rng(spec.seed)
    steps = spec.blocks - 1
    shocks = spec.drift + spec.volatility * rng.standard_normal(steps)
    trades = rng.random(steps) >= spec.no_trade_prob
    log_y = np.log(spec.reserve_y) + np.concatenate(([0.0], np.cumsum(np.where(trades, shocks, 0.0))))
    reserve_y = np.exp(log_y)
    reserve_y[0] = spec.reserve_y
    product = spec.reserve_x * spec.reserve_y
    reserve_x = product / reserve_y
    reserve_x[0] = spec.reserve_x
    if spec.volatility == 0.0 and spec.drift == 0.0:
        reserve_x[:] = spec.reserve_x
        reserve_y[:] = spec.reserve_y

    blocks = spec.start_block + np.arange(spec.blocks)
    snapshots = [
        PoolSnapshotRecord(
            pool_id=spec.pool_id,
            block=int(block),
            reserve_x=float(x),
            reserve_y=float(y),
            fee=spec.fee,
        )
        for block, x, y in zip(blocks, reserve_x, reserve_y)
    ]
    y_prices = spec.price_x_usd * reserve_x / reserve_y
    prices = {
        spec.token_x: PriceFeed(
            token=spec.token_x,
            records=[
                PriceFeedRecord(token=spec.token_x, block=int(block), usd_price=spec.price_x_usd)
                for block in blocks
            ],
        ),
        spec.token_y: PriceFeed(
            token=spec.token_y,
            records=[
                PriceFeedRecord(token=spec.token_y, block=int(block), usd_price=float(price))
                for block, price in zip(blocks, y_prices)
            ],
        ),
    }
    pools = {
        spec.pool_id: PoolInfo(
            pool_id=spec.pool_id, token_x=spec.token_x, token_y=spec.token_y, fee=spec.fee
        )
    }
    logger.info(
        "Generated %d blocks for %s (volatility %g, seed %d, %d quiet blocks)",
        spec.blocks,
        spec.pool_id,
        spec.volatility,
        spec.seed,
        int(steps - trades.sum()),
    )
    return Dataset(pools=pools, snapshots={spec.pool_id: snapshots}, prices=prices)


def write_dataset(dataset: Dataset, directory: Path) -> list[Path]:
    """Write pools, snapshots and prices as CSV; floats keep their shortest exact repr."""
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportError(f"{directory}: cannot create directory ({exc})") from exc

    pools = pd.DataFrame(
        [info.model_dump() for info in dataset.pools.values()], columns=POOL_COLUMNS
    )
    snapshots = pd.DataFrame(
        [record.model_dump() for pool in sorted(dataset.snapshots) for record in dataset.snapshots[pool]],
        columns=SNAPSHOT_COLUMNS,
    )
    prices = pd.DataFrame(
        [record.model_dump() for token in sorted(dataset.prices) for record in dataset.prices[token].records],
        columns=PRICE_COLUMNS,
    )

    written: list[Path] = []
    for frame, name in ((pools, POOLS_FILE), (snapshots, SNAPSHOTS_FILE), (prices, PRICES_FILE)):
        path = directory / name
        try:
            frame.to_csv(path, index=False, lineterminator="\n")
        except OSError as exc:
            raise ReportError(f"{path}: cannot write ({exc})") from exc
        written.append(path)
    return written

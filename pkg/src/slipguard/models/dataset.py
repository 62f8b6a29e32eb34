"""Models for ingested pool snapshots, price feeds and synthetic fixtures."""

from __future__ import annotations

import bisect

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from slipguard.constants import DEFAULT_POOL_FEE, DEFAULT_PRICE_GAP_LIMIT
from slipguard.exceptions import PriceFeedError


class PoolSnapshotRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    pool_id: str = Field(min_length=1)
    block: int = Field(ge=0)
    reserve_x: float = Field(gt=0, allow_inf_nan=False)
    reserve_y: float = Field(gt=0, allow_inf_nan=False)
    fee: float = Field(default=DEFAULT_POOL_FEE, ge=0.0, lt=1.0)


class ReserveDelta(BaseModel):
    """Signed reserve change of a pool at a block (for example a swap or a mint)."""

    model_config = ConfigDict(frozen=True)

    pool_id: str = Field(min_length=1)
    block: int = Field(ge=0)
    delta_x: float = Field(allow_inf_nan=False)
    delta_y: float = Field(allow_inf_nan=False)


class PriceFeedRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    token: str = Field(min_length=1)
    block: int = Field(ge=0)
    usd_price: float = Field(gt=0, allow_inf_nan=False)


class PoolInfo(BaseModel):
    """Registry entry: a pool swaps ``token_x`` (input) for ``token_y`` (output)."""

    model_config = ConfigDict(frozen=True)

    pool_id: str = Field(min_length=1)
    token_x: str = Field(min_length=1)
    token_y: str = Field(min_length=1)
    fee: float = Field(default=DEFAULT_POOL_FEE, ge=0.0, lt=1.0)


class PriceFeed(BaseModel):
    """USD prices of one token, forward-filled for at most ``gap_limit`` blocks."""

    model_config = ConfigDict(frozen=True)

    token: str
    records: list[PriceFeedRecord] = Field(default_factory=list)
    gap_limit: int = Field(default=DEFAULT_PRICE_GAP_LIMIT, ge=0)

    _blocks: list[int] = PrivateAttr(default_factory=list)

    def model_post_init(self, __context: object) -> None:
        self._blocks = [record.block for record in self.records]

    def price_at(self, block: int) -> float:
        idx = bisect.bisect_right(self._blocks, block) - 1
        if idx < 0:
            raise PriceFeedError(f"no {self.token} price at or before block {block}")
        last = self.records[idx]
        if block - last.block > self.gap_limit:
            raise PriceFeedError(
                f"{self.token} price stale for blocks {last.block + 1}-{block} "
                f"(limit {self.gap_limit})"
            )
        return last.usd_price


class Dataset(BaseModel):
    """Everything the replay and the advisors read: reserves, prices and the pool registry."""

    pools: dict[str, PoolInfo] = Field(default_factory=dict)
    snapshots: dict[str, list[PoolSnapshotRecord]] = Field(default_factory=dict)
    deltas: dict[str, list[ReserveDelta]] = Field(default_factory=dict)
    prices: dict[str, PriceFeed] = Field(default_factory=dict)

    @property
    def pool_ids(self) -> list[str]:
        return sorted(self.snapshots)

    def block_bounds(self, pool_id: str) -> tuple[int, int]:
        records = self.snapshots[pool_id]
        return records[0].block, records[-1].block


class FixtureSpec(BaseModel):
    """Parameters of a seeded synthetic reserve walk."""

    blocks: int = Field(ge=2)
    volatility: float = 0.0
    drift: float = 0.0
    seed: int = 0
    no_trade_prob: float = Field(default=0.0, ge=0.0, le=1.0)
    start_block: int = Field(default=0, ge=0)
    pool_id: str = "USDC-WETH"
    token_x: str = "USDC"
    token_y: str = "WETH"
    reserve_x: float = Field(default=20_000_000.0, gt=0)
    reserve_y: float = Field(default=10_000.0, gt=0)
    fee: float = Field(default=DEFAULT_POOL_FEE, ge=0.0, lt=1.0)
    price_x_usd: float = Field(default=1.0, gt=0)

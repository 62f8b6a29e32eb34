"""Models for block replay configuration, trade records and cost reports."""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from slipguard.constants import (
    DEFAULT_BASE_FEE_USD,
    DEFAULT_BASELINE_SLIPPAGE,
    DEFAULT_MAX_RETRIES,
    DEFAULT_MAX_WORKERS,
    DEFAULT_TRADE_SIZES_USD,
)
from slipguard.models.slippage import PolicyParams


class Policy(str, Enum):
    OURS = "ours"
    BASELINE = "baseline"


class ReplayConfig(BaseModel):
    """Settings of one replay run. ``block_range`` is half-open: [start, end)."""

    model_config = ConfigDict(frozen=True)

    block_range: tuple[int, int]
    trade_sizes_usd: list[float] = Field(default_factory=lambda: list(DEFAULT_TRADE_SIZES_USD))
    base_fee_usd: float = Field(default=DEFAULT_BASE_FEE_USD, gt=0.0)
    baseline_slippage: float = Field(default=DEFAULT_BASELINE_SLIPPAGE, gt=0.0, lt=1.0)
    policy_params: PolicyParams = Field(default_factory=PolicyParams)
    max_retries: int = Field(default=DEFAULT_MAX_RETRIES, ge=0)
    policies: list[Policy] = Field(default_factory=lambda: [Policy.OURS, Policy.BASELINE])
    pools: list[str] | None = None
    max_workers: int = Field(default=DEFAULT_MAX_WORKERS, gt=0)

    @field_validator("trade_sizes_usd")
    @classmethod
    def _sizes_positive(cls, sizes: list[float]) -> list[float]:
        if not sizes:
            raise ValueError("at least one trade size is required")
        if any(size <= 0 for size in sizes):
            raise ValueError("trade sizes must be positive")
        return sizes

    @model_validator(mode="after")
    def _range_ordered(self) -> ReplayConfig:
        start, end = self.block_range
        if start >= end:
            raise ValueError(f"empty block range [{start}, {end})")
        return self


class TradeRecord(BaseModel):
    block: int
    size_usd: float
    policy: Policy
    chosen_s: float
    attacked: bool = False
    failed_attempts: int = Field(default=0, ge=0)
    fractional_cost: float = Field(default=0.0, ge=0.0)
    abandoned: bool = False


class CostRow(BaseModel):
    pool: str
    size_usd: float
    policy: Policy
    mean_frac_cost: float = Field(default=0.0, ge=0.0)
    failed_trades: int = 0
    avg_failed_attempts: float = 0.0
    attacked_trades: int = 0
    abandoned_trades: int = 0
    simulated_trades: int = 0


class RatioRow(BaseModel):
    pool: str
    size_usd: float
    cost_ratio: float = Field(ge=0.0)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.cost_ratio)


class CostReport(BaseModel):
    base_fee_usd: float = DEFAULT_BASE_FEE_USD
    block_range: tuple[int, int] | None = None
    rows: list[CostRow] = Field(default_factory=list)
    ratios: list[RatioRow] = Field(default_factory=list)

    def row(self, pool: str, size_usd: float, policy: Policy) -> CostRow | None:
        for candidate in self.rows:
            if (
                candidate.pool == pool
                and candidate.size_usd == size_usd
                and candidate.policy == policy
            ):
                return candidate
        return None

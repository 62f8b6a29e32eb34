"""Models for pool state and trade intents."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PoolState(BaseModel):
    """Reserves of an X/Y constant product pool at a block height."""

    model_config = ConfigDict(frozen=True)

    reserve_x: float = Field(gt=0, allow_inf_nan=False)
    reserve_y: float = Field(gt=0, allow_inf_nan=False)
    fee: float = Field(default=0.003, ge=0.0, lt=1.0)
    block: int = Field(default=0, ge=0)

    @property
    def product(self) -> float:
        return self.reserve_x * self.reserve_y


class TradeIntent(BaseModel):
    """A victim swap of ``input_x`` tokens X for Y, submitted against ``pool``.

    ``slippage`` equal to 1 means no tolerance was set. ``base_fee_y`` is the
    per-transaction base fee expressed in token Y. ``fee`` defaults to the
    pool's fee and must agree with it when given.
    """

    model_config = ConfigDict(frozen=True)

    input_x: float = Field(gt=0, allow_inf_nan=False)
    slippage: float = Field(gt=0.0, le=1.0)
    base_fee_y: float = Field(default=0.0, ge=0.0, allow_inf_nan=False)
    pool: PoolState
    fee: float | None = Field(default=None, ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def _fee_matches_pool(self) -> TradeIntent:
        if self.fee is None:
            object.__setattr__(self, "fee", self.pool.fee)
        elif self.fee != self.pool.fee:
            raise ValueError(f"intent fee {self.fee} differs from pool fee {self.pool.fee}")
        return self

    def with_slippage(self, slippage: float) -> TradeIntent:
        return self.model_copy(update={"slippage": slippage})

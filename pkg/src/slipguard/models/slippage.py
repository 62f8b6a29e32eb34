"""Models for slippage histories, predictions and policy advice."""

from __future__ import annotations

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from slipguard.constants import (
    DEFAULT_BASE_FEE_STEP,
    DEFAULT_EPSILON,
    DEFAULT_FAILED_TX_GAS_FRACTION,
    DEFAULT_MAX_SEARCH_ITERS,
    DEFAULT_MIN_OBSERVATIONS,
    DEFAULT_SEARCH_TOLERANCE,
    DEFAULT_WINDOW,
)


class SlippageHistory(BaseModel):
    """Per-block signed fractional price change for one pool and trade size.

    Values are loss-positive: ``s > 0`` means the X->Y trader received less
    than quoted one block earlier. Each value is stored at the block where it
    was realised.
    """

    model_config = ConfigDict(frozen=True)

    pool_id: str
    size_bucket: float = Field(gt=0)
    blocks: list[int] = Field(default_factory=list)
    slippages: list[float] = Field(default_factory=list)
    window: int = Field(default=DEFAULT_WINDOW, gt=0)
    skipped_blocks: list[int] = Field(default_factory=list)

    _block_array: np.ndarray = PrivateAttr()
    _value_array: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def _check_series(self) -> SlippageHistory:
        if len(self.blocks) != len(self.slippages):
            raise ValueError("blocks and slippages must have the same length")
        blocks = np.asarray(self.blocks, dtype=np.int64)
        if blocks.size > 1 and not np.all(np.diff(blocks) > 0):
            raise ValueError("blocks must be strictly increasing")
        return self

    def model_post_init(self, __context: object) -> None:
        self._block_array = np.asarray(self.blocks, dtype=np.int64)
        self._value_array = np.asarray(self.slippages, dtype=np.float64)
        self._block_array.setflags(write=False)
        self._value_array.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        return self._value_array

    @property
    def block_array(self) -> np.ndarray:
        return self._block_array

    def __len__(self) -> int:
        return len(self.blocks)

    def index_before(self, at_block: int) -> int:
        """Number of entries stored at blocks strictly before ``at_block``."""
        return int(np.searchsorted(self._block_array, at_block, side="left"))

    def window_before(self, at_block: int, window: int | None = None) -> np.ndarray:
        """The last ``window`` values stored before ``at_block`` (read-only view)."""
        w = self.window if window is None else window
        end = self.index_before(at_block)
        return self._value_array[max(0, end - w):end]


class PredictionReport(BaseModel):
    """Accuracy of the percentile predictor over an evaluation range.

    ``pred_mean`` is reported with the gain-positive sign, so typical values
    are negative.
    """

    pool_id: str = ""
    size_usd: float = 0.0
    mean_abs: float = 0.0
    vol_abs: float = Field(default=0.0, ge=0.0)
    pred_mean: float = 0.0
    rel_error: float = Field(default=0.0, ge=0.0)
    failure_prob_target: float = Field(gt=0.0, lt=1.0)
    window: int = Field(gt=0)
    exceedance_rate: float = Field(default=0.0, ge=0.0, le=1.0)
    evaluated_blocks: int = 0


class PolicyParams(BaseModel):
    """Trader-side cost model and search settings."""

    model_config = ConfigDict(frozen=True)

    failed_tx_gas_fraction: float = Field(default=DEFAULT_FAILED_TX_GAS_FRACTION, ge=0.0)
    base_fee_step: float = Field(default=DEFAULT_BASE_FEE_STEP, ge=0.0)
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, lt=0.01)
    search_tolerance: float = Field(default=DEFAULT_SEARCH_TOLERANCE, gt=0.0)
    max_search_iters: int = Field(default=DEFAULT_MAX_SEARCH_ITERS, gt=0)
    window: int = Field(default=DEFAULT_WINDOW, gt=0)
    min_observations: int = Field(default=DEFAULT_MIN_OBSERVATIONS, gt=0)

    @property
    def retry_fee_multiple(self) -> float:
        """l + m: base fees burnt by a reverted attempt plus the next-block fee rise."""
        return self.failed_tx_gas_fraction + self.base_fee_step


class Regime(str, Enum):
    ATTACK_FREE = "attack_free"
    UNAVOIDABLE = "unavoidable"


class AdviceDiagnostics(BaseModel):
    failure_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    tail_expectation: float = 0.0
    window_size: int = 0
    low_confidence: bool = False
    notes: list[str] = Field(default_factory=list)


class SlippageAdvice(BaseModel):
    """Slippage tolerance chosen for one trade."""

    chosen: float = Field(gt=0.0, lt=1.0)
    s_a: float = Field(ge=0.0, le=1.0)
    s_r: float = Field(ge=0.0, le=1.0)
    regime: Regime
    diagnostics: AdviceDiagnostics = Field(default_factory=AdviceDiagnostics)

    @model_validator(mode="after")
    def _regime_matches_bounds(self) -> SlippageAdvice:
        expected = Regime.ATTACK_FREE if self.s_r < self.s_a else Regime.UNAVOIDABLE
        if self.regime != expected:
            raise ValueError(f"regime {self.regime.value} inconsistent with s_a/s_r")
        return self

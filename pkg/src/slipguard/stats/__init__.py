"""Empirical block slippage statistics."""

from slipguard.stats.slippage import (
    block_slippage_series,
    failure_probability,
    min_window_size,
    prediction_accuracy,
    prediction_grid,
    quantile_slippage,
    rolling_quantiles,
    tail_expectation,
)

__all__ = [
    "block_slippage_series",
    "failure_probability",
    "min_window_size",
    "prediction_accuracy",
    "prediction_grid",
    "quantile_slippage",
    "rolling_quantiles",
    "tail_expectation",
]

"""Per-block slippage series and the sliding-window percentile predictor.

Slippage values are loss-positive: a positive entry means a trader quoted at
block ``t`` received less at ``t + 1``. The entry for the pair ``(t, t+1)`` is
stored at ``t + 1``, so a query at block ``t`` only sees data realised before
``t``.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from slipguard.amm.cpmm import swap_input_for_output, swap_output
from slipguard.constants import DEFAULT_MIN_OBSERVATIONS, DEFAULT_WINDOW
from slipguard.exceptions import DomainError, InfeasibleQuoteError, NotEnoughDataError
from slipguard.models.pool import PoolState
from slipguard.models.slippage import PredictionReport, SlippageHistory

logger = logging.getLogger(__name__)

# Rank slack for p·n landing a hair under an integer.
_RANK_SLACK = 1e-9
# Upper bound on floats held by one partitioned chunk of windows.
_CHUNK_ELEMENTS = 1 << 22


def block_slippage_series(
    snapshots: Sequence[PoolState],
    trade_output_usd: float,
    price_y: Callable[[int], float],
    pool_id: str = "",
    window: int = DEFAULT_WINDOW,
) -> SlippageHistory:
    """Slippage of a fixed-size X->Y trade between each pair of consecutive snapshots.

    At each block ``t`` the USD size is converted to a Y output with
    ``price_y(t)``, backed out to an X input at ``t``'s reserves and re-quoted
    at ``t + 1``. Blocks whose output cannot be quoted are skipped.
    """
    if len(snapshots) < 2:
        raise NotEnoughDataError("need at least two snapshots to measure slippage")
    if trade_output_usd <= 0.0:
        raise DomainError(f"trade size must be positive, got {trade_output_usd!r}")

    blocks: list[int] = []
    values: list[float] = []
    skipped: list[int] = []
    for before, after in zip(snapshots, snapshots[1:]):
        target_y = trade_output_usd / price_y(before.block)
        try:
            input_x = swap_input_for_output(before, target_y)
        except InfeasibleQuoteError:
            skipped.append(after.block)
            continue
        quoted = swap_output(before, input_x)
        realized = swap_output(after, input_x)
        blocks.append(after.block)
        values.append((quoted - realized) / quoted)

    if skipped:
        logger.warning(
            "%s: %d blocks skipped for size $%g (output exceeds pool reserves), first at %d",
            pool_id or "pool",
            len(skipped),
            trade_output_usd,
            skipped[0],
        )
    return SlippageHistory(
        pool_id=pool_id,
        size_bucket=trade_output_usd,
        blocks=blocks,
        slippages=values,
        window=window,
        skipped_blocks=skipped,
    )


def min_window_size(p: float, floor_size: int = DEFAULT_MIN_OBSERVATIONS) -> int:
    """Observations needed before a ``p`` quantile means anything."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"failure probability target must lie in (0, 1), got {p!r}")
    return max(floor_size, math.ceil(1.0 / p - _RANK_SLACK))


def _upper_rank(p: float, n: int) -> int:
    # Number of observations allowed strictly above the quantile.
    return min(int(math.floor(p * n + _RANK_SLACK)), n - 1)


def quantile_slippage(
    history: SlippageHistory,
    at_block: int,
    p: float,
    window: int | None = None,
    min_observations: int = DEFAULT_MIN_OBSERVATIONS,
) -> float:
    """Smallest observed slippage exceeded by at most a ``p`` share of the window.

    Negative quantiles are reported as 0.
    """
    values = history.window_before(at_block, window)
    needed = min_window_size(p, min_observations)
    if values.size < needed:
        raise NotEnoughDataError(
            f"{values.size} observations before block {at_block}, need {needed} for p={p:g}"
        )
    n = values.size
    k = _upper_rank(p, n)
    estimate = float(np.partition(values, n - 1 - k)[n - 1 - k])
    return max(estimate, 0.0)


def failure_probability(
    history: SlippageHistory,
    at_block: int,
    s: float,
    window: int | None = None,
) -> float:
    """Share of window observations with slippage strictly above ``s``."""
    values = history.window_before(at_block, window)
    if values.size == 0:
        raise NotEnoughDataError(f"no observations before block {at_block}")
    return float(np.count_nonzero(values > s)) / values.size


def tail_expectation(
    history: SlippageHistory,
    at_block: int,
    s: float,
    window: int | None = None,
) -> float:
    """Mean slippage over observations strictly above ``s``; 0 for an empty tail."""
    values = history.window_before(at_block, window)
    if values.size == 0:
        raise NotEnoughDataError(f"no observations before block {at_block}")
    tail = values[values > s]
    return float(tail.mean()) if tail.size else 0.0


def rolling_quantiles(values: np.ndarray, window: int, p: float) -> np.ndarray:
    """Quantile predictions for entries ``window .. n-1`` from the preceding full windows.

    Element ``j`` of the result is the clamped ``p`` quantile of
    ``values[j : j + window]``, the prediction for ``values[j + window]``.
    """
    values = np.asarray(values, dtype=np.float64)
    count = values.size - window
    if count <= 0:
        return np.empty(0, dtype=np.float64)
    kth = window - 1 - _upper_rank(p, window)
    windows = sliding_window_view(values[:-1], window)
    chunk = max(1, _CHUNK_ELEMENTS // window)
    out = np.empty(count, dtype=np.float64)
    for start in range(0, count, chunk):
        stop = min(start + chunk, count)
        part = np.partition(windows[start:stop], kth, axis=1)
        out[start:stop] = part[:, kth]
    np.maximum(out, 0.0, out=out)
    return out


def prediction_accuracy(
    history: SlippageHistory,
    p: float,
    window: int,
    evaluation_range: tuple[int, int] | None = None,
) -> PredictionReport:
    """Calibration of the ``p`` quantile predictor with window ``window``.

    Only entries inside ``evaluation_range`` (half-open, by block) preceded by
    a full window are evaluated.
    """
    needed = min_window_size(p)
    if window < needed:
        raise NotEnoughDataError(f"window {window} too short for p={p:g}, need {needed}")
    values = history.values
    blocks = history.block_array
    if evaluation_range is None:
        lo_idx, hi_idx = 0, values.size
    else:
        lo_idx = int(np.searchsorted(blocks, evaluation_range[0], side="left"))
        hi_idx = int(np.searchsorted(blocks, evaluation_range[1], side="left"))

    first = max(lo_idx, window)
    if first >= hi_idx:
        raise NotEnoughDataError(
            f"no entries with a full window of {window} in the evaluation range "
            f"({history.pool_id or 'pool'}, {values.size} entries)"
        )

    predictions = rolling_quantiles(values[first - window:hi_idx], window, p)
    realized = values[first:hi_idx]
    exceedance = float(np.mean(realized > predictions))
    magnitudes = np.abs(values[lo_idx:hi_idx])

    return PredictionReport(
        pool_id=history.pool_id,
        size_usd=history.size_bucket,
        mean_abs=float(magnitudes.mean()),
        vol_abs=float(magnitudes.std()),
        pred_mean=-float(predictions.mean()),
        rel_error=abs(exceedance - p) / p,
        failure_prob_target=p,
        window=window,
        exceedance_rate=exceedance,
        evaluated_blocks=int(realized.size),
    )


def prediction_grid(
    history: SlippageHistory,
    ps: Sequence[float],
    windows: Sequence[int],
    evaluation_range: tuple[int, int] | None = None,
) -> list[PredictionReport]:
    """Prediction reports for every ``(p, window)`` pair that has enough data."""
    reports: list[PredictionReport] = []
    for p in ps:
        for window in windows:
            try:
                reports.append(prediction_accuracy(history, p, window, evaluation_range))
            except NotEnoughDataError as exc:
                logger.warning("Skipping p=%g w=%d: %s", p, window, exc)
    if not reports:
        raise NotEnoughDataError(
            f"no (p, w) combination has enough history for {history.pool_id or 'pool'}"
        )
    return reports

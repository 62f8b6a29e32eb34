"""Choosing a slippage tolerance that balances sandwich risk against failed trades.

Two bounds drive the choice. Below ``s_a = 2b / δ_vy`` no sandwich can pay
for the bot's two base fees. ``s_r`` is the first tolerance at which the
expected cost of a failed attempt no longer exceeds the tolerance itself:

    s >= p(s) / (1 - p(s)) * ((l + m) * b / δ_vy + E(s~ | s~ > s))

where ``p`` and ``E`` are the empirical exceedance share and tail mean of
the recent history window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from slipguard.amm.cpmm import expected_output
from slipguard.exceptions import NotEnoughDataError
from slipguard.models.pool import TradeIntent
from slipguard.models.slippage import (
    AdviceDiagnostics,
    PolicyParams,
    Regime,
    SlippageAdvice,
    SlippageHistory,
)
from slipguard.utils.numeric import bisect_predicate

logger = logging.getLogger(__name__)


def attack_free_bound(intent: TradeIntent) -> float:
    """Largest tolerance that leaves no profitable sandwich, capped at 1."""
    quote = expected_output(intent)
    return min(2.0 * intent.base_fee_y / quote, 1.0)


class _FailureCost:
    """Step-function view of the retry cost over one sorted window."""

    def __init__(self, window: np.ndarray, fee_term: float) -> None:
        self.sorted = np.sort(window)
        self.n = self.sorted.size
        # suffix[i] = sum(sorted[i:])
        self.suffix = np.concatenate((np.cumsum(self.sorted[::-1])[::-1], [0.0]))
        self.fee_term = fee_term

    def above(self, s: float) -> tuple[int, float]:
        idx = int(np.searchsorted(self.sorted, s, side="right"))
        return self.n - idx, float(self.suffix[idx])

    def cost(self, s: float) -> float:
        count, total = self.above(s)
        if count == 0:
            return 0.0
        if count == self.n:
            return float("inf")
        p = count / self.n
        return p / (1.0 - p) * (self.fee_term + total / count)

    def settles(self, s: float) -> bool:
        return s >= self.cost(s)

    def breakpoints(self, lo: float, hi: float) -> np.ndarray:
        left = int(np.searchsorted(self.sorted, lo, side="right"))
        right = int(np.searchsorted(self.sorted, hi, side="right"))
        return np.unique(self.sorted[left:right])


@dataclass(frozen=True)
class _BoundResult:
    value: float
    note: str | None = None


def _first_crossing(curve: _FailureCost, lo: float, hi: float) -> float:
    # The cost is constant between window values; walk the pieces inside (lo, hi].
    start = lo
    for end in [*curve.breakpoints(lo, hi).tolist(), float("inf")]:
        level = curve.cost(start)
        if start > lo and level <= start:
            return start
        if level < end:
            return level
        start = end
    return hi


def _failure_cost_search(
    intent: TradeIntent,
    history: SlippageHistory,
    at_block: int,
    params: PolicyParams,
) -> _BoundResult:
    window = history.window_before(at_block, params.window)
    if window.size < params.min_observations:
        raise NotEnoughDataError(
            f"{window.size} observations before block {at_block} "
            f"({history.pool_id or 'pool'}, ${history.size_bucket:g}), "
            f"need {params.min_observations}"
        )
    fee_term = params.retry_fee_multiple * intent.base_fee_y / expected_output(intent)
    curve = _FailureCost(window, fee_term)

    if curve.settles(0.0):
        return _BoundResult(0.0)
    ceiling = 1.0 - params.epsilon
    if not curve.settles(ceiling):
        return _BoundResult(
            ceiling,
            f"retry cost exceeds every tolerance below 1 (failure probability "
            f"{curve.above(ceiling)[0] / curve.n:.3f} at the ceiling)",
        )

    lo, hi = bisect_predicate(
        curve.settles,
        0.0,
        ceiling,
        abs_tol=params.search_tolerance,
        max_iter=params.max_search_iters,
    )
    return _BoundResult(_first_crossing(curve, lo, hi))


def failure_cost_bound(
    intent: TradeIntent,
    history: SlippageHistory,
    at_block: int,
    params: PolicyParams | None = None,
) -> float:
    """Smallest tolerance in ``[0, 1)`` at which expected retry cost stops exceeding it."""
    result = _failure_cost_search(intent, history, at_block, params or PolicyParams())
    if result.note:
        logger.warning("Block %d: %s", at_block, result.note)
    return result.value


def choose_slippage(
    intent: TradeIntent,
    history: SlippageHistory,
    at_block: int,
    params: PolicyParams | None = None,
) -> SlippageAdvice:
    """Pick a tolerance: just under ``s_a`` when that is safe, otherwise ``s_r``."""
    params = params or PolicyParams()
    s_a = attack_free_bound(intent)
    bound = _failure_cost_search(intent, history, at_block, params)
    s_r = bound.value
    notes = [bound.note] if bound.note else []

    if s_r < s_a:
        regime = Regime.ATTACK_FREE
        chosen = s_a - params.epsilon
        if chosen <= 0.0:
            chosen = s_a / 2.0
            notes.append("attack-free bound below epsilon, halved instead")
    else:
        regime = Regime.UNAVOIDABLE
        chosen = s_r if s_r > 0.0 else params.epsilon
    chosen = min(chosen, 1.0 - params.epsilon)

    window = history.window_before(at_block, params.window)
    exceed = window[window > chosen]
    probability = exceed.size / window.size
    low_confidence = probability == 0.0 and window.size < params.window
    if low_confidence:
        notes.append(f"no exceedance in a short window of {window.size} observations")
        logger.info("Block %d: low-confidence advice from %d observations", at_block, window.size)

    return SlippageAdvice(
        chosen=chosen,
        s_a=s_a,
        s_r=s_r,
        regime=regime,
        diagnostics=AdviceDiagnostics(
            failure_probability=probability,
            tail_expectation=float(exceed.mean()) if exceed.size else 0.0,
            window_size=int(window.size),
            low_confidence=low_confidence,
            notes=notes,
        ),
    )

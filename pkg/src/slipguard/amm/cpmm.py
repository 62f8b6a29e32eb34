"""Swap quoting and state transitions for an X/Y constant product pool.

The input amount is charged the pool fee ``f`` before it enters the curve,
so a trade of ``d`` tokens X pays out ``y·(1−f)·d / (x + (1−f)·d)`` tokens Y
while the full ``d`` is added to the X reserve.
"""

from __future__ import annotations

import logging
import math

from slipguard.constants import ROUND_TRIP_TOLERANCE
from slipguard.exceptions import ArithmeticOverflowError, DomainError, InfeasibleQuoteError
from slipguard.models.pool import PoolState, TradeIntent
from slipguard.utils.numeric import bisect_predicate

logger = logging.getLogger(__name__)


def _check_amount(amount: float, name: str) -> None:
    if not math.isfinite(amount):
        raise ArithmeticOverflowError(f"{name} is not finite: {amount!r}")
    if amount <= 0.0:
        raise DomainError(f"{name} must be positive, got {amount!r}")


def _curve_output(reserve_in: float, reserve_out: float, fee: float, amount_in: float) -> float:
    effective = (1.0 - fee) * amount_in
    out = reserve_out * effective / (reserve_in + effective)
    if not math.isfinite(out):
        raise ArithmeticOverflowError(f"swap of {amount_in!r} overflowed")
    if out <= 0.0:
        raise DomainError(f"swap of {amount_in!r} underflows to a zero output")
    if out >= reserve_out:
        raise ArithmeticOverflowError(f"swap of {amount_in!r} rounds to the whole reserve")
    return out


def _remaining_reserve(reserve_in: float, reserve_out: float, fee: float, amount_in: float) -> float:
    # reserve_out - output, without the cancellation for large trades
    return reserve_out * reserve_in / (reserve_in + (1.0 - fee) * amount_in)


def swap_output(pool: PoolState, input_x: float) -> float:
    """Tokens Y paid out for ``input_x`` tokens X."""
    _check_amount(input_x, "input_x")
    return _curve_output(pool.reserve_x, pool.reserve_y, pool.fee, input_x)


def swap_output_y(pool: PoolState, input_y: float) -> float:
    """Tokens X paid out for ``input_y`` tokens Y."""
    _check_amount(input_y, "input_y")
    return _curve_output(pool.reserve_y, pool.reserve_x, pool.fee, input_y)


def swap_input_for_output(pool: PoolState, output_y: float) -> float:
    """Tokens X needed to receive exactly ``output_y`` tokens Y.

    The closed-form inverse is checked against a forward quote. When the two
    disagree by more than the round-trip tolerance, bisection on the forward
    map decides.
    """
    _check_amount(output_y, "output_y")
    x, y, g = pool.reserve_x, pool.reserve_y, 1.0 - pool.fee
    if output_y >= y:
        raise InfeasibleQuoteError(f"output {output_y!r} >= reserve_y {y!r}")

    estimate = x * output_y / (g * (y - output_y))
    try:
        quoted = swap_output(pool, estimate)
    except (DomainError, ArithmeticOverflowError):
        quoted = math.nan
    if abs(quoted - output_y) <= ROUND_TRIP_TOLERANCE * output_y:
        return estimate

    logger.debug(
        "Inverse quote closed form off by %.3g relative, bisecting",
        abs(quoted - output_y) / output_y,
    )
    hi = estimate if math.isfinite(estimate) and estimate > 0 else x
    while swap_output(pool, hi) < output_y:
        hi *= 2.0
    _, root = bisect_predicate(lambda d: swap_output(pool, d) >= output_y, 0.0, hi, max_iter=2000)
    return root


def apply_swap(pool: PoolState, input_x: float) -> tuple[PoolState, float]:
    """Execute an X->Y swap; returns the new pool and the Y paid out."""
    out = swap_output(pool, input_x)
    new_pool = PoolState(
        reserve_x=pool.reserve_x + input_x,
        reserve_y=_remaining_reserve(pool.reserve_x, pool.reserve_y, pool.fee, input_x),
        fee=pool.fee,
        block=pool.block,
    )
    return new_pool, out


def apply_swap_y(pool: PoolState, input_y: float) -> tuple[PoolState, float]:
    """Execute a Y->X swap; returns the new pool and the X paid out."""
    out = swap_output_y(pool, input_y)
    new_pool = PoolState(
        reserve_x=_remaining_reserve(pool.reserve_y, pool.reserve_x, pool.fee, input_y),
        reserve_y=pool.reserve_y + input_y,
        fee=pool.fee,
        block=pool.block,
    )
    return new_pool, out


def spot_price_y_in_x(pool: PoolState) -> float:
    """Price of one token Y in tokens X, ignoring the fee."""
    return pool.reserve_x / pool.reserve_y


def expected_output(intent: TradeIntent) -> float:
    """Tokens Y the victim is quoted at submission time."""
    return swap_output(intent.pool, intent.input_x)

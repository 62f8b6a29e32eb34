"""Builders and exact-arithmetic oracles shared by the test suites."""

from __future__ import annotations

from fractions import Fraction

from slipguard.models.dataset import PoolInfo
from slipguard.models.pool import PoolState
from slipguard.models.slippage import SlippageHistory
from slipguard.replay.market import PoolMarket


def exact_swap_output(reserve_x: float, reserve_y: float, fee: float, amount_in: float) -> Fraction:
    """Swap equation evaluated in exact rational arithmetic."""
    x, y, d = Fraction(reserve_x), Fraction(reserve_y), Fraction(amount_in)
    g = 1 - Fraction(fee)
    return y * g * d / (x + g * d)


def make_history(
    values: list[float],
    first_block: int = 0,
    pool_id: str = "pool",
    window: int = 2000,
) -> SlippageHistory:
    return SlippageHistory(
        pool_id=pool_id,
        size_bucket=100.0,
        blocks=list(range(first_block, first_block + len(values))),
        slippages=values,
        window=window,
    )


def make_market(states: list[tuple[float, float]], fee: float = 0.003, first_block: int = 0) -> PoolMarket:
    """Market whose token X is worth $1 and token Y its spot price in X."""
    pool_states = [
        PoolState(reserve_x=x, reserve_y=y, fee=fee, block=first_block + i)
        for i, (x, y) in enumerate(states)
    ]
    info = PoolInfo(pool_id="TEST", token_x="X", token_y="Y", fee=fee)
    return PoolMarket(info, pool_states, [x / y for x, y in states])

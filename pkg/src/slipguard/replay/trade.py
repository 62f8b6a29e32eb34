"""One simulated trade, including failed attempts and retries."""

from __future__ import annotations

import logging

from slipguard.amm.cpmm import swap_input_for_output, swap_output
from slipguard.exceptions import InfeasibleQuoteError
from slipguard.game.sandwich import is_attackable
from slipguard.models.pool import TradeIntent
from slipguard.models.replay import Policy, ReplayConfig, TradeRecord
from slipguard.models.slippage import SlippageHistory
from slipguard.policy.slippage_policy import choose_slippage
from slipguard.replay.market import PoolMarket

logger = logging.getLogger(__name__)


def simulate_trade(
    block: int,
    size_usd: float,
    policy: Policy,
    market: PoolMarket,
    history: SlippageHistory,
    config: ReplayConfig,
) -> TradeRecord:
    """Replay a trade of ``size_usd`` output quoted at ``block`` and executed one block later.

    An attackable tolerance is assumed to be sandwiched to its limit and costs
    the full tolerance. Otherwise the trade executes when the realised move is
    within tolerance, or fails, pays ``(l + m)`` base fees plus the adverse
    move, and is re-quoted and re-advised at the next block. Costs are
    fractions of ``size_usd``.
    """
    params = config.policy_params
    retry_fee_usd = params.retry_fee_multiple * config.base_fee_usd
    cost_usd = 0.0
    failed = 0
    first_choice: float | None = None
    t = block

    while True:
        if t + 1 not in market:
            return _abandon(block, size_usd, policy, first_choice, failed, cost_usd, "data ends")

        pool = market.state_at(t)
        price_y = market.price_y_usd(t)
        quote_y = size_usd / price_y
        try:
            input_x = swap_input_for_output(pool, quote_y)
        except InfeasibleQuoteError:
            return _abandon(block, size_usd, policy, first_choice, failed, cost_usd, "size exceeds pool")

        intent = TradeIntent(
            input_x=input_x,
            slippage=config.baseline_slippage,
            base_fee_y=config.base_fee_usd / price_y,
            pool=pool,
        )
        if policy is Policy.OURS:
            chosen = choose_slippage(intent, history, t, params).chosen
            intent = intent.with_slippage(chosen)
        else:
            chosen = config.baseline_slippage
        if first_choice is None:
            first_choice = chosen

        if is_attackable(intent):
            return TradeRecord(
                block=block,
                size_usd=size_usd,
                policy=policy,
                chosen_s=first_choice,
                attacked=True,
                failed_attempts=failed,
                fractional_cost=(cost_usd + chosen * size_usd) / size_usd,
            )

        quoted = swap_output(pool, input_x)
        realized = (quoted - swap_output(market.state_at(t + 1), input_x)) / quoted
        if realized <= chosen:
            return TradeRecord(
                block=block,
                size_usd=size_usd,
                policy=policy,
                chosen_s=first_choice,
                failed_attempts=failed,
                fractional_cost=(cost_usd + max(realized, 0.0) * size_usd) / size_usd,
            )

        failed += 1
        cost_usd += retry_fee_usd + realized * size_usd
        if failed > config.max_retries:
            return _abandon(block, size_usd, policy, first_choice, failed, cost_usd, "retries exhausted")
        t += 1


def _abandon(
    block: int,
    size_usd: float,
    policy: Policy,
    chosen: float | None,
    failed: int,
    cost_usd: float,
    reason: str,
) -> TradeRecord:
    logger.debug("Trade at block %d ($%g, %s) abandoned: %s", block, size_usd, policy.value, reason)
    return TradeRecord(
        block=block,
        size_usd=size_usd,
        policy=policy,
        chosen_s=chosen if chosen is not None else 0.0,
        failed_attempts=failed,
        fractional_cost=cost_usd / size_usd,
        abandoned=True,
    )

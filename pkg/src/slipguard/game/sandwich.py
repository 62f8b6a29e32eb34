"""Attacker-side analytics for a single victim swap X->Y.

The bot front-runs with ``a`` tokens X, lets the victim trade, then sells the
whole front-run output back for X. Its net profit is
``backrun_output_x - a - 2 * base_fee_x``. A victim with tolerance ``s``
reverts when it would receive less than ``(1 - s)`` of its quote, which caps
``a`` at the tolerance boundary.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt

from slipguard.amm.cpmm import apply_swap, apply_swap_y, expected_output, spot_price_y_in_x, swap_output
from slipguard.constants import BOUNDARY_TOLERANCE, REVERT_TOLERANCE
from slipguard.exceptions import (
    DomainError,
    NoInteriorOptimumError,
    UnboundedOptimumError,
    VictimRevertedError,
)
from slipguard.models.attack import AttackPlan, BindingConstraint, GameOutcome
from slipguard.models.pool import PoolState, TradeIntent
from slipguard.utils.numeric import bisect_predicate, bracket_max, golden_section_max

logger = logging.getLogger(__name__)

# Bisection to adjacent floats needs at most ~2100 halvings on doubles.
_BOUNDARY_MAX_ITERS = 2200


def attack_profit(
    pool: PoolState,
    victim_input_x: float,
    attack_inputs: float | npt.ArrayLike,
    base_fee_x: float = 0.0,
) -> float | np.ndarray:
    """Net profit in X of front-running with ``attack_inputs``, assuming the victim executes.

    Accepts a scalar or an array of inputs. The back-run gain is evaluated as
    ``(g·d·(x0+v) - a·y2) / (y2 + g·d)`` so that large inputs do not lose the
    profit to cancellation between ``backrun_output_x`` and ``a``.
    """
    a = np.asarray(attack_inputs, dtype=np.float64)
    if np.any(a < 0.0) or not np.all(np.isfinite(a)):
        raise DomainError("attack inputs must be finite and non-negative")
    x0, y0, g = pool.reserve_x, pool.reserve_y, 1.0 - pool.fee
    v = victim_input_x
    ga = g * a
    front_y = y0 * ga / (x0 + ga)
    y1 = y0 * x0 / (x0 + ga)
    x1 = x0 + a
    y2 = y1 * x1 / (x1 + g * v)
    gain = (g * front_y * (x0 + v) - a * y2) / (y2 + g * front_y)
    profit = gain - 2.0 * base_fee_x
    if profit.ndim == 0:
        return float(profit)
    return profit


def _after_frontrun(x0: float, y0: float, g: float, v: float, a: float) -> float:
    y1 = y0 * x0 / (x0 + g * a)
    x1 = x0 + a
    return y1 * (g * v) / (x1 + g * v)


def victim_output_after_frontrun(pool: PoolState, victim_input_x: float, attack_input: float) -> float:
    """Tokens Y the victim receives when the bot front-runs with ``attack_input`` X."""
    if attack_input < 0.0:
        raise DomainError(f"attack input must be non-negative, got {attack_input!r}")
    if attack_input == 0.0:
        return swap_output(pool, victim_input_x)
    return _after_frontrun(pool.reserve_x, pool.reserve_y, 1.0 - pool.fee, victim_input_x, attack_input)


def _profit_slope_at_zero(pool: PoolState, victim_input_x: float) -> float:
    x0, g, v = pool.reserve_x, 1.0 - pool.fee, victim_input_x
    return g * g * (x0 + v) * (x0 + g * v) / (x0 * x0) - 1.0


def _printed_unconstrained_seed(pool: PoolState, victim_input_x: float) -> float:
    """Closed-form zero crossing of the profit derivative, as usually quoted.

    Only a starting point for the numeric search: its groupings are not
    reliable and it can be off by an order of magnitude.
    """
    x0, f, v = pool.reserve_x, pool.fee, victim_input_x
    g = 1.0 - f
    denom = (2.0 - f) * f * x0 - v * g * g * f
    radicand = v * v * g**3 * x0 * (x0 - g * g * f * (v + x0))
    if denom == 0.0 or radicand < 0.0:
        return math.nan
    return (v * g * g * x0 - (2.0 - f) * f * x0 * x0 + math.sqrt(radicand)) / denom


def optimal_unconstrained_input(pool: PoolState, victim_input_x: float) -> float:
    """Front-run input maximising profit against a victim with no tolerance.

    Raises UnboundedOptimumError on a fee-free pool, where profit keeps rising
    with the input, and NoInteriorOptimumError when profit is already
    non-increasing at zero input.
    """
    if victim_input_x <= 0.0:
        raise DomainError(f"victim input must be positive, got {victim_input_x!r}")
    if pool.fee == 0.0:
        raise UnboundedOptimumError(
            "fee-free pool: profit increases without bound in the input; set a slippage tolerance below 1"
        )
    if _profit_slope_at_zero(pool, victim_input_x) <= 0.0:
        raise NoInteriorOptimumError(
            f"profit does not increase from zero input (victim input {victim_input_x!r})"
        )

    def gross(a: float) -> float:
        return float(attack_profit(pool, victim_input_x, a))

    seed = _printed_unconstrained_seed(pool, victim_input_x)
    start = seed if math.isfinite(seed) and seed > 0.0 else pool.reserve_x
    lo, hi = bracket_max(gross, start)
    optimum = golden_section_max(gross, lo, hi)
    if math.isfinite(seed) and seed > 0.0 and abs(seed - optimum) > 1e-6 * optimum:
        logger.debug("Unconstrained optimum %.6g differs from closed-form seed %.6g", optimum, seed)
    return optimum


def _boundary_seed(pool: PoolState, victim_input_x: float, s: float) -> float:
    # Positive root of g·a² + B·a − C = 0 for the executed-boundary condition.
    x0, g, v = pool.reserve_x, 1.0 - pool.fee, victim_input_x
    b_coef = x0 + g * (x0 + g * v)
    c_coef = x0 * (x0 + g * v) * s / (1.0 - s)
    return 2.0 * c_coef / (b_coef + math.sqrt(b_coef * b_coef + 4.0 * g * c_coef))


def max_tolerated_input(pool: PoolState, victim_input_x: float, s: float) -> float:
    """Largest front-run input that still lets the victim's trade execute.

    At the returned input the victim receives ``(1 - s)`` of its quote. The
    boundary is found by bisection on the simulated front-run; the quadratic
    closed form only seeds the bracket. The result lies on the executing side.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"slippage tolerance must lie in (0, 1), got {s!r}")
    quote = swap_output(pool, victim_input_x)
    target = (1.0 - s) * quote
    x0, y0, g = pool.reserve_x, pool.reserve_y, 1.0 - pool.fee

    def reverts(a: float) -> bool:
        if a == 0.0:
            return quote < target
        return _after_frontrun(x0, y0, g, victim_input_x, a) < target

    seed = _boundary_seed(pool, victim_input_x, s)
    if not math.isfinite(seed) or seed <= 0.0:
        return 0.0

    lo = hi = seed
    step = seed * 1e-12
    if reverts(seed):
        while reverts(lo):
            lo = max(lo - step, 0.0)
            step *= 2.0
    else:
        while not reverts(hi):
            hi += step
            step *= 2.0
    lo, hi = bisect_predicate(reverts, lo, hi, max_iter=_BOUNDARY_MAX_ITERS)

    if abs(lo - seed) > BOUNDARY_TOLERANCE * max(lo, 1e-300):
        logger.debug("Tolerance boundary %.12g differs from closed form %.12g", lo, seed)
    return lo


def closed_form_max_input_fee_free(reserve_x: float, victim_input_x: float, s: float) -> float:
    """Tolerance-bound front-run input on a fee-free pool."""
    x0, v = reserve_x, victim_input_x
    root = math.sqrt((1.0 - s) * (v * v * (1.0 - s) + 4.0 * v * x0 + 4.0 * x0 * x0))
    return 0.5 * (root / (1.0 - s) - 2.0 * x0 - v)


def closed_form_profit_fee_free(reserve_x: float, victim_input_x: float, s: float) -> float:
    """Bot profit at the tolerance bound on a fee-free pool with zero base fee."""
    x0, v = reserve_x, victim_input_x
    return v * s * (v + x0) / (v * s + x0)


def closed_form_loss_fee_free(reserve_x: float, victim_input_x: float, s: float) -> float:
    """Victim loss in X at the tolerance bound on a fee-free pool with zero base fee."""
    x0, v = reserve_x, victim_input_x
    root = math.sqrt(v * v + (4.0 * v * x0 + 4.0 * x0 * x0) / (1.0 - s))
    return s * v * (v + root) ** 2 / (4.0 * x0 * (v + x0))


def profit_loss_ratio_bound(reserve_x: float, victim_input_x: float, s: float) -> float:
    """Upper bound on profit / loss for a fee-free pool; never above 1."""
    return reserve_x / (victim_input_x * s + reserve_x)


def _no_attack(base_fee_x: float) -> AttackPlan:
    return AttackPlan(base_fee_x=base_fee_x, binding_constraint=BindingConstraint.NO_ATTACK)


def optimal_attack(intent: TradeIntent, base_fee_x: float = 0.0) -> AttackPlan:
    """The bot's best response: input ``min(unconstrained optimum, tolerance bound)``.

    A plan with non-positive net profit is replaced by NO_ATTACK.
    """
    if base_fee_x < 0.0 or not math.isfinite(base_fee_x):
        raise DomainError(f"base fee must be finite and non-negative, got {base_fee_x!r}")
    pool, v, s = intent.pool, intent.input_x, intent.slippage

    if s < 1.0:
        bound = max_tolerated_input(pool, v, s)
        if pool.fee == 0.0:
            attack_input, binding = bound, BindingConstraint.SLIPPAGE_BOUND
        else:
            try:
                optimum = optimal_unconstrained_input(pool, v)
            except NoInteriorOptimumError:
                return _no_attack(base_fee_x)
            if optimum < bound:
                attack_input, binding = optimum, BindingConstraint.UNCONSTRAINED_OPTIMUM
            else:
                attack_input, binding = bound, BindingConstraint.SLIPPAGE_BOUND
    else:
        try:
            attack_input = optimal_unconstrained_input(pool, v)
        except NoInteriorOptimumError:
            return _no_attack(base_fee_x)
        binding = BindingConstraint.UNCONSTRAINED_OPTIMUM

    if attack_input <= 0.0:
        return _no_attack(base_fee_x)

    gross = float(attack_profit(pool, v, attack_input))
    profit = gross - 2.0 * base_fee_x
    if profit <= 0.0:
        return _no_attack(base_fee_x)

    return AttackPlan(
        input_x=attack_input,
        frontrun_output_y=swap_output(pool, attack_input),
        backrun_output_x=attack_input + gross,
        profit_x=profit,
        base_fee_x=base_fee_x,
        binding_constraint=binding,
    )


def execute_sandwich(intent: TradeIntent, plan: AttackPlan) -> GameOutcome:
    """Play front-run, victim swap and back-run in order.

    Raises VictimRevertedError when the plan pushes the victim below its
    minimum output.
    """
    quote = expected_output(intent)
    minimum = (1.0 - intent.slippage) * quote

    if not plan.is_attack:
        after_victim, realized = apply_swap(intent.pool, intent.input_x)
        return GameOutcome(
            plan=plan,
            expected_output_y=quote,
            victim_realized_y=realized,
            post_victim_pool=after_victim,
            final_pool=after_victim,
        )

    after_front, front_y = apply_swap(intent.pool, plan.input_x)
    after_victim, realized = apply_swap(after_front, intent.input_x)
    if realized < minimum * (1.0 - REVERT_TOLERANCE):
        raise VictimRevertedError(
            f"victim would receive {realized!r} Y, below its minimum {minimum!r}"
        )
    final_pool, back_x = apply_swap_y(after_victim, front_y)
    loss = max(quote - realized, 0.0) * spot_price_y_in_x(after_victim)

    return GameOutcome(
        plan=plan,
        expected_output_y=quote,
        victim_realized_y=realized,
        victim_loss_x=loss,
        realized_profit_x=back_x - plan.input_x - 2.0 * plan.base_fee_x,
        post_victim_pool=after_victim,
        final_pool=final_pool,
    )


def victim_loss(outcome: GameOutcome) -> float:
    """Victim's Y shortfall valued in X at the price right after its own swap."""
    return outcome.shortfall_y * spot_price_y_in_x(outcome.post_victim_pool)


def is_attackable(intent: TradeIntent) -> bool:
    """True when the tolerance leaves room for the bot to cover two base fees."""
    return intent.slippage * expected_output(intent) >= 2.0 * intent.base_fee_y

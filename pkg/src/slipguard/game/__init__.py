"""Sandwich attack game: attacker best response and victim outcome."""

from slipguard.game.sandwich import (
    attack_profit,
    closed_form_loss_fee_free,
    closed_form_max_input_fee_free,
    closed_form_profit_fee_free,
    execute_sandwich,
    is_attackable,
    max_tolerated_input,
    optimal_attack,
    optimal_unconstrained_input,
    profit_loss_ratio_bound,
    victim_loss,
    victim_output_after_frontrun,
)

__all__ = [
    "attack_profit",
    "closed_form_loss_fee_free",
    "closed_form_max_input_fee_free",
    "closed_form_profit_fee_free",
    "execute_sandwich",
    "is_attackable",
    "max_tolerated_input",
    "optimal_attack",
    "optimal_unconstrained_input",
    "profit_loss_ratio_bound",
    "victim_loss",
    "victim_output_after_frontrun",
]

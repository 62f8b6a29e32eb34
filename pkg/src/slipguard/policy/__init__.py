"""Trader-side slippage tolerance selection."""

from slipguard.policy.slippage_policy import attack_free_bound, choose_slippage, failure_cost_bound

__all__ = ["attack_free_bound", "choose_slippage", "failure_cost_bound"]

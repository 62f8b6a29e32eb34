"""Models for sandwich attack plans and game outcomes."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from slipguard.models.pool import PoolState


class BindingConstraint(str, Enum):
    UNCONSTRAINED_OPTIMUM = "unconstrained_optimum"
    SLIPPAGE_BOUND = "slippage_bound"
    NO_ATTACK = "no_attack"


class AttackPlan(BaseModel):
    """The attacker's best response to a victim trade.

    Amounts ending in ``_x`` are token X, ``_y`` token Y. ``profit_x`` is net of
    the two base fees paid by the front- and back-run transactions.
    """

    model_config = ConfigDict(frozen=True)

    input_x: float = Field(default=0.0, ge=0.0)
    frontrun_output_y: float = Field(default=0.0, ge=0.0)
    backrun_output_x: float = Field(default=0.0, ge=0.0)
    profit_x: float = 0.0
    base_fee_x: float = Field(default=0.0, ge=0.0)
    binding_constraint: BindingConstraint = BindingConstraint.NO_ATTACK

    @model_validator(mode="after")
    def _check_consistency(self) -> AttackPlan:
        no_attack = self.binding_constraint == BindingConstraint.NO_ATTACK
        if (self.input_x == 0.0) != no_attack:
            raise ValueError("input_x must be zero exactly when no attack is planned")
        if self.profit_x > self.backrun_output_x:
            raise ValueError("profit cannot exceed the back-run output")
        return self

    @property
    def is_attack(self) -> bool:
        return self.binding_constraint != BindingConstraint.NO_ATTACK


class GameOutcome(BaseModel):
    """Result of playing the front-run, victim and back-run transactions."""

    model_config = ConfigDict(frozen=True)

    plan: AttackPlan
    expected_output_y: float = Field(gt=0)
    victim_realized_y: float = Field(gt=0)
    victim_loss_x: float = Field(default=0.0, ge=0.0)
    realized_profit_x: float = 0.0
    post_victim_pool: PoolState
    final_pool: PoolState

    @property
    def shortfall_y(self) -> float:
        return max(self.expected_output_y - self.victim_realized_y, 0.0)

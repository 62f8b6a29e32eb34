"""Pydantic models shared across slipguard modules."""

from slipguard.models.attack import AttackPlan, BindingConstraint, GameOutcome
from slipguard.models.dataset import (
    Dataset,
    FixtureSpec,
    PoolInfo,
    PoolSnapshotRecord,
    PriceFeed,
    PriceFeedRecord,
    ReserveDelta,
)
from slipguard.models.pool import PoolState, TradeIntent
from slipguard.models.replay import (
    CostReport,
    CostRow,
    Policy,
    RatioRow,
    ReplayConfig,
    TradeRecord,
)
from slipguard.models.slippage import (
    AdviceDiagnostics,
    PolicyParams,
    PredictionReport,
    Regime,
    SlippageAdvice,
    SlippageHistory,
)

__all__ = [
    "AttackPlan",
    "BindingConstraint",
    "GameOutcome",
    "Dataset",
    "FixtureSpec",
    "PoolInfo",
    "PoolSnapshotRecord",
    "PriceFeed",
    "PriceFeedRecord",
    "ReserveDelta",
    "PoolState",
    "TradeIntent",
    "CostReport",
    "CostRow",
    "Policy",
    "RatioRow",
    "ReplayConfig",
    "TradeRecord",
    "AdviceDiagnostics",
    "PolicyParams",
    "PredictionReport",
    "Regime",
    "SlippageAdvice",
    "SlippageHistory",
]

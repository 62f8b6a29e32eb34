"""Block replay of trades under the advised and the constant slippage policies."""

from slipguard.replay.engine import ReplayEngine, run_replay, run_sweep
from slipguard.replay.market import PoolMarket, reconstruct_reserves
from slipguard.replay.trade import simulate_trade

__all__ = [
    "PoolMarket",
    "ReplayEngine",
    "reconstruct_reserves",
    "run_replay",
    "run_sweep",
    "simulate_trade",
]

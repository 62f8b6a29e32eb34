"""Constants and defaults for slipguard."""

from __future__ import annotations

# Uniswap V2 pool fee
DEFAULT_POOL_FEE = 0.003

# Trader policy defaults
DEFAULT_FAILED_TX_GAS_FRACTION = 0.25  # l: gas of a reverted swap vs a successful one
DEFAULT_BASE_FEE_STEP = 0.125  # m: max base fee increase between consecutive blocks
DEFAULT_EPSILON = 1e-6
DEFAULT_SEARCH_TOLERANCE = 1e-9
DEFAULT_MAX_SEARCH_ITERS = 200
DEFAULT_WINDOW = 2000
DEFAULT_MIN_OBSERVATIONS = 10

# Replay defaults
DEFAULT_TRADE_SIZES_USD = [10.0, 100.0, 1000.0, 10000.0, 100000.0]
DEFAULT_BASE_FEE_USD = 4.0
DEFAULT_BASELINE_SLIPPAGE = 0.005
DEFAULT_MAX_RETRIES = 50
DEFAULT_PRICE_GAP_LIMIT = 10
DEFAULT_MAX_WORKERS = 4

# Numeric tolerances
ROUND_TRIP_TOLERANCE = 1e-9
BOUNDARY_TOLERANCE = 1e-9
REVERT_TOLERANCE = 1e-12

# Dataset layout
SNAPSHOTS_FILE = "snapshots.csv"
PRICES_FILE = "prices.csv"
POOLS_FILE = "pools.csv"
DELTAS_FILE = "deltas.csv"
JSONL_SUFFIXES = {".jsonl", ".ndjson"}

SNAPSHOT_COLUMNS = ["pool_id", "block", "reserve_x", "reserve_y", "fee"]
PRICE_COLUMNS = ["token", "block", "usd_price"]
POOL_COLUMNS = ["pool_id", "token_x", "token_y", "fee"]
DELTA_COLUMNS = ["pool_id", "block", "delta_x", "delta_y"]

# Report layout
COSTS_REPORT_FILE = "report_costs.csv"
RATIO_REPORT_FILE = "report_ratio.csv"
COSTS_HEADER = [
    "pool",
    "size_usd",
    "policy",
    "mean_frac_cost",
    "failed_trades",
    "avg_failed_attempts",
    "attacked_trades",
]
RATIO_HEADER = ["pool", "size_usd", "cost_ratio"]

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INGESTION = 4

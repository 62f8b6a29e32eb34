"""Dataset ingestion, validation and synthetic fixtures."""

from slipguard.data.fixtures import generate_fixture, write_dataset
from slipguard.data.loader import (
    load_dataset,
    load_deltas,
    load_pools,
    load_price_feed,
    load_snapshots,
)

__all__ = [
    "generate_fixture",
    "write_dataset",
    "load_dataset",
    "load_deltas",
    "load_pools",
    "load_price_feed",
    "load_snapshots",
]

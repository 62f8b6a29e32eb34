"""Per-block pool states and USD prices for one pool."""

from __future__ import annotations

from typing import Sequence

from pydantic import ValidationError

from slipguard.exceptions import IngestionError, NotEnoughDataError, ReserveDataError
from slipguard.models.dataset import Dataset, PoolInfo, PoolSnapshotRecord, ReserveDelta
from slipguard.models.pool import PoolState


def _state(block: int, reserve_x: float, reserve_y: float, fee: float) -> PoolState:
    try:
        return PoolState(reserve_x=reserve_x, reserve_y=reserve_y, fee=fee, block=block)
    except ValidationError as exc:
        raise ReserveDataError(
            f"invalid reserves ({reserve_x!r}, {reserve_y!r})", block=block
        ) from exc


def reconstruct_reserves(
    records: Sequence[PoolSnapshotRecord | ReserveDelta],
    block_range: tuple[int, int] | None = None,
) -> list[PoolState]:
    """Fold snapshots and reserve deltas into one state per block.

    Records must be sorted by block. A snapshot replaces the state, a delta is
    added to it, and blocks without records carry the previous state. The
    result covers the first record's block through the last one, clipped to
    the half-open ``block_range``.
    """
    if not records:
        return []
    if not isinstance(records[0], PoolSnapshotRecord):
        raise IngestionError(f"block {records[0].block}: reserve delta without a prior snapshot")
    for prev, cur in zip(records, records[1:]):
        if cur.block < prev.block:
            raise IngestionError(f"records not sorted by block: {cur.block} after {prev.block}")

    first, last = records[0].block, records[-1].block
    start, end = (first, last + 1) if block_range is None else block_range
    states: list[PoolState] = []
    current: PoolState | None = None
    idx = 0
    for block in range(first, min(last + 1, end)):
        while idx < len(records) and records[idx].block == block:
            record = records[idx]
            if isinstance(record, PoolSnapshotRecord):
                current = _state(block, record.reserve_x, record.reserve_y, record.fee)
            else:
                assert current is not None
                current = _state(
                    block,
                    current.reserve_x + record.delta_x,
                    current.reserve_y + record.delta_y,
                    current.fee,
                )
            idx += 1
        assert current is not None
        if current.block != block:
            current = current.model_copy(update={"block": block})
        if block >= start:
            states.append(current)
    return states


class PoolMarket:
    """Reconstructed reserves of one pool plus the USD price of its output token, indexed by block."""

    def __init__(self, info: PoolInfo, states: list[PoolState], price_y: list[float]) -> None:
        if not states:
            raise NotEnoughDataError(f"pool {info.pool_id} has no reserve data")
        self.info = info
        self.states = states
        self.first_block = states[0].block
        self.last_block = states[-1].block
        self._price_y = price_y

    @classmethod
    def from_dataset(cls, dataset: Dataset, pool_id: str) -> PoolMarket:
        """Build the market, checking both tokens' price coverage for every block up front."""
        info = dataset.pools.get(pool_id)
        if info is None:
            raise NotEnoughDataError(f"unknown pool {pool_id!r}")
        events: list[PoolSnapshotRecord | ReserveDelta] = [
            *dataset.snapshots.get(pool_id, []),
            *dataset.deltas.get(pool_id, []),
        ]
        # snapshots before deltas within a block
        events.sort(key=lambda r: (r.block, isinstance(r, ReserveDelta)))
        states = reconstruct_reserves(events)
        if not states:
            raise NotEnoughDataError(f"pool {pool_id} has no reserve data")
        feed_x = dataset.prices[info.token_x]
        feed_y = dataset.prices[info.token_y]
        for state in states:
            feed_x.price_at(state.block)
        price_y = [feed_y.price_at(state.block) for state in states]
        return cls(info, states, price_y)

    @property
    def pool_id(self) -> str:
        return self.info.pool_id

    def __contains__(self, block: int) -> bool:
        return self.first_block <= block <= self.last_block

    def state_at(self, block: int) -> PoolState:
        return self.states[block - self.first_block]

    def price_y_usd(self, block: int) -> float:
        return self._price_y[block - self.first_block]

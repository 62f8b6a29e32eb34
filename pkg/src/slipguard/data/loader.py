"""Load pool snapshots, price feeds and the pool registry from CSV or JSON lines.

Every malformed row is reported with its file and line number; nothing is
partially loaded.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, TypeVar

import pandas as pd
from pydantic import BaseModel, ValidationError

from slipguard.constants import (
    DEFAULT_POOL_FEE,
    DEFAULT_PRICE_GAP_LIMIT,
    DELTA_COLUMNS,
    DELTAS_FILE,
    JSONL_SUFFIXES,
    POOL_COLUMNS,
    POOLS_FILE,
    PRICE_COLUMNS,
    PRICES_FILE,
    SNAPSHOT_COLUMNS,
    SNAPSHOTS_FILE,
)
from slipguard.exceptions import IngestionError, PriceFeedError, ReserveDataError
from slipguard.models.dataset import (
    Dataset,
    PoolInfo,
    PoolSnapshotRecord,
    PriceFeed,
    PriceFeedRecord,
    ReserveDelta,
)

logger = logging.getLogger(__name__)

RecordT = TypeVar("RecordT", bound=BaseModel)


def _read_rows(path: Path, columns: list[str], optional: set[str]) -> list[tuple[int, dict[str, Any]]]:
    """Rows of a CSV or JSON-lines file as ``(line_number, fields)`` pairs."""
    if not path.is_file():
        raise IngestionError("file not found", path=path)
    if not path.read_text(encoding="utf-8").strip():
        return []

    if path.suffix in JSONL_SUFFIXES:
        rows: list[tuple[int, dict[str, Any]]] = []
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise IngestionError(f"invalid JSON: {exc.msg}", path=path, line=line_no) from exc
                if not isinstance(data, dict):
                    raise IngestionError("expected a JSON object", path=path, line=line_no)
                rows.append((line_no, data))
        present = set().union(*(row.keys() for _, row in rows)) if rows else set()
    else:
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=True)
        except pd.errors.ParserError as exc:
            raise IngestionError(f"malformed CSV: {exc}", path=path) from exc
        frame.columns = [str(col).strip() for col in frame.columns]
        present = set(frame.columns)
        # header is line 1
        rows = [(int(idx) + 2, record) for idx, record in zip(frame.index, frame.to_dict("records"))]

    missing = [col for col in columns if col not in present and col not in optional]
    if missing:
        raise IngestionError(f"missing columns: {', '.join(missing)}", path=path)

    cleaned: list[tuple[int, dict[str, Any]]] = []
    for line_no, row in rows:
        fields = {
            key: value.strip() if isinstance(value, str) else value
            for key, value in row.items()
            if key in columns
        }
        for key in optional:
            value = fields.get(key)
            if value is None or value == "" or (not isinstance(value, str) and pd.isna(value)):
                fields.pop(key, None)
        cleaned.append((line_no, fields))
    return cleaned


def _validate(path: Path, rows: list[tuple[int, dict[str, Any]]], model: type[RecordT]) -> list[tuple[int, RecordT]]:
    records: list[tuple[int, RecordT]] = []
    for line_no, fields in rows:
        try:
            records.append((line_no, model(**fields)))
        except ValidationError as exc:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in err['loc']) or 'row'}: {err['msg']}"
                for err in exc.errors()
            )
            if model is PoolSnapshotRecord and any(
                err["loc"] and err["loc"][0] in ("reserve_x", "reserve_y") for err in exc.errors()
            ):
                raise ReserveDataError(
                    f"line {line_no}: {problems}", block=_block_hint(fields), path=path
                ) from exc
            raise IngestionError(problems, path=path, line=line_no) from exc
    return records


def _block_hint(fields: dict[str, Any]) -> int:
    try:
        return int(fields.get("block", -1))
    except (TypeError, ValueError):
        return -1


def _dedupe(path: Path, records: list[tuple[int, RecordT]], key: str) -> dict[str, list[RecordT]]:
    """Group by ``key`` and sort by block; the last row wins for a repeated block."""
    grouped: dict[str, dict[int, RecordT]] = {}
    duplicates = 0
    unsorted = False
    last_seen: dict[str, int] = {}
    for _, record in records:
        group = getattr(record, key)
        block = getattr(record, "block")
        if group in last_seen and block < last_seen[group]:
            unsorted = True
        last_seen[group] = block
        bucket = grouped.setdefault(group, {})
        if block in bucket:
            duplicates += 1
        bucket[block] = record
    if duplicates:
        logger.warning(
            "%s: %d duplicate %s/block rows, kept the last occurrence of each",
            path,
            duplicates,
            key,
        )
    if unsorted:
        logger.info("%s: rows not sorted by block, sorted on load", path)
    return {group: [bucket[b] for b in sorted(bucket)] for group, bucket in sorted(grouped.items())}


def load_snapshots(path: Path, default_fee: float = DEFAULT_POOL_FEE) -> dict[str, list[PoolSnapshotRecord]]:
    """Per-pool snapshot records sorted by block."""
    rows = _read_rows(path, SNAPSHOT_COLUMNS, optional={"fee"})
    for _, fields in rows:
        fields.setdefault("fee", default_fee)
    snapshots = _dedupe(path, _validate(path, rows, PoolSnapshotRecord), "pool_id")
    logger.info("Loaded %d snapshots for %d pools from %s", len(rows), len(snapshots), path)
    return snapshots


def load_deltas(path: Path) -> dict[str, list[ReserveDelta]]:
    """Per-pool reserve deltas sorted by block; several deltas per block are kept in file order."""
    rows = _read_rows(path, DELTA_COLUMNS, optional=set())
    grouped: dict[str, list[ReserveDelta]] = {}
    for _, record in _validate(path, rows, ReserveDelta):
        grouped.setdefault(record.pool_id, []).append(record)
    return {pool: sorted(items, key=lambda d: d.block) for pool, items in sorted(grouped.items())}


def load_price_feed(path: Path, gap_limit: int = DEFAULT_PRICE_GAP_LIMIT) -> dict[str, PriceFeed]:
    """Per-token USD price feeds; gaps longer than ``gap_limit`` blocks are rejected."""
    rows = _read_rows(path, PRICE_COLUMNS, optional=set())
    grouped = _dedupe(path, _validate(path, rows, PriceFeedRecord), "token")
    feeds: dict[str, PriceFeed] = {}
    for token, records in grouped.items():
        for prev, cur in zip(records, records[1:]):
            if cur.block - prev.block - 1 > gap_limit:
                raise PriceFeedError(
                    f"{token}: no price for blocks {prev.block + 1}-{cur.block - 1} "
                    f"(forward-fill limit {gap_limit})",
                    path=path,
                )
        feeds[token] = PriceFeed(token=token, records=records, gap_limit=gap_limit)
    return feeds


def load_pools(path: Path, default_fee: float = DEFAULT_POOL_FEE) -> dict[str, PoolInfo]:
    rows = _read_rows(path, POOL_COLUMNS, optional={"fee"})
    for _, fields in rows:
        fields.setdefault("fee", default_fee)
    pools: dict[str, PoolInfo] = {}
    for line_no, info in _validate(path, rows, PoolInfo):
        if info.pool_id in pools:
            raise IngestionError(f"pool {info.pool_id} registered twice", path=path, line=line_no)
        pools[info.pool_id] = info
    return pools


def _find(data_dir: Path, file_name: str) -> Path | None:
    csv_path = data_dir / file_name
    if csv_path.is_file():
        return csv_path
    stem = Path(file_name).stem
    for suffix in sorted(JSONL_SUFFIXES):
        candidate = data_dir / f"{stem}{suffix}"
        if candidate.is_file():
            return candidate
    return None


def _require(data_dir: Path, file_name: str) -> Path:
    path = _find(data_dir, file_name)
    if path is None:
        raise IngestionError(f"{file_name} (or its .jsonl variant) not found", path=data_dir)
    return path


def load_dataset(
    data_dir: Path,
    gap_limit: int = DEFAULT_PRICE_GAP_LIMIT,
    default_fee: float = DEFAULT_POOL_FEE,
) -> Dataset:
    """Load and cross-check a dataset directory.

    Every snapshot pool must be registered and both of its tokens need a
    price feed.
    """
    if not data_dir.is_dir():
        raise IngestionError("data directory not found", path=data_dir)

    pools_path = _require(data_dir, POOLS_FILE)
    snapshots_path = _require(data_dir, SNAPSHOTS_FILE)
    prices_path = _require(data_dir, PRICES_FILE)
    deltas_path = _find(data_dir, DELTAS_FILE)

    pools = load_pools(pools_path, default_fee)
    snapshots = load_snapshots(snapshots_path, default_fee)
    prices = load_price_feed(prices_path, gap_limit)
    deltas = load_deltas(deltas_path) if deltas_path else {}

    for pool_id in sorted(set(snapshots) | set(deltas)):
        info = pools.get(pool_id)
        if info is None:
            raise IngestionError(f"pool {pool_id} has reserves but is not registered", path=pools_path)
        for token in (info.token_x, info.token_y):
            if token not in prices:
                raise PriceFeedError(f"no price feed for {token} (pool {pool_id})", path=prices_path)

    if not snapshots:
        logger.warning("%s: no snapshots, dataset has zero pools", snapshots_path)
    return Dataset(pools=pools, snapshots=snapshots, prices=prices, deltas=deltas)

"""Shared pytest fixtures for SlipGuard tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from slipguard.config import SlipGuardConfig
from slipguard.data.fixtures import generate_fixture, write_dataset
from slipguard.models.dataset import Dataset, FixtureSpec
from slipguard.models.pool import PoolState, TradeIntent


@pytest.fixture
def worked_pool() -> PoolState:
    return PoolState(reserve_x=100.0, reserve_y=100.0, fee=0.003)


@pytest.fixture
def worked_intent(worked_pool: PoolState) -> TradeIntent:
    return TradeIntent(input_x=10.0, slippage=0.01, pool=worked_pool)


@pytest.fixture
def quiet_dataset() -> Dataset:
    return generate_fixture(FixtureSpec(blocks=400, volatility=0.0, seed=1))


@pytest.fixture
def volatile_dataset() -> Dataset:
    return generate_fixture(FixtureSpec(blocks=600, volatility=1.13e-4, seed=7))


@pytest.fixture
def quiet_data_dir(tmp_path: Path, quiet_dataset: Dataset) -> Path:
    data_dir = tmp_path / "quiet"
    write_dataset(quiet_dataset, data_dir)
    return data_dir


@pytest.fixture
def volatile_data_dir(tmp_path: Path, volatile_dataset: Dataset) -> Path:
    data_dir = tmp_path / "volatile"
    write_dataset(volatile_dataset, data_dir)
    return data_dir


@pytest.fixture
def default_config(tmp_path: Path) -> SlipGuardConfig:
    return SlipGuardConfig(
        data_dir=tmp_path / "data",
        output_dir=tmp_path / "reports",
    )

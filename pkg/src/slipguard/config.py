"""Configuration management for slipguard."""

from __future__ import annotations

from contextvars import ContextVar
from pathlib import Path
from typing import Any

import yaml
from pydantic import Field, ValidationError, field_validator
from pydantic.fields import FieldInfo
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource

from slipguard.constants import (
    DEFAULT_BASE_FEE_STEP,
    DEFAULT_BASE_FEE_USD,
    DEFAULT_BASELINE_SLIPPAGE,
    DEFAULT_EPSILON,
    DEFAULT_FAILED_TX_GAS_FRACTION,
    DEFAULT_MAX_RETRIES,
    DEFAULT_MAX_SEARCH_ITERS,
    DEFAULT_MAX_WORKERS,
    DEFAULT_MIN_OBSERVATIONS,
    DEFAULT_POOL_FEE,
    DEFAULT_PRICE_GAP_LIMIT,
    DEFAULT_SEARCH_TOLERANCE,
    DEFAULT_TRADE_SIZES_USD,
    DEFAULT_WINDOW,
)
from slipguard.exceptions import ConfigError, DomainError
from slipguard.models.replay import ReplayConfig
from slipguard.models.slippage import PolicyParams

CONFIG_FILE_NAME = ".slipguard.yaml"

# Values read from the YAML or pyproject file for the config being built.
_file_values: ContextVar[dict[str, Any] | None] = ContextVar("slipguard_file_values", default=None)


class _FileSettingsSource(PydanticBaseSettingsSource):
    """Settings from .slipguard.yaml or [tool.slipguard], ranked below env vars."""

    def get_field_value(self, field: FieldInfo, field_name: str) -> tuple[Any, str, bool]:
        return (_file_values.get() or {}).get(field_name), field_name, False

    def __call__(self) -> dict[str, Any]:
        values = _file_values.get() or {}
        return {name: value for name, value in values.items() if name in self.settings_cls.model_fields}


class SlipGuardConfig(BaseSettings):
    """Configuration loaded from .slipguard.yaml, pyproject.toml, env vars, and CLI flags."""

    model_config = {"env_prefix": "SLIPGUARD_", "env_file": ".env", "extra": "ignore"}

    # Dataset and output
    data_dir: Path = Field(default=Path("./data"))
    output_dir: Path = Field(default=Path("./reports"))
    output_format: str = "text"
    seed: int = 0

    # History window
    window: int = Field(default=DEFAULT_WINDOW, gt=0)
    min_observations: int = Field(default=DEFAULT_MIN_OBSERVATIONS, gt=0)

    # Trader cost model
    failed_tx_gas_fraction: float = Field(default=DEFAULT_FAILED_TX_GAS_FRACTION, ge=0.0)
    base_fee_step: float = Field(default=DEFAULT_BASE_FEE_STEP, ge=0.0)
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, lt=0.01)
    search_tolerance: float = Field(default=DEFAULT_SEARCH_TOLERANCE, gt=0.0)
    max_search_iters: int = Field(default=DEFAULT_MAX_SEARCH_ITERS, gt=0)

    # Replay
    base_fee_usd: float = Field(default=DEFAULT_BASE_FEE_USD, gt=0.0)
    baseline_slippage: float = Field(default=DEFAULT_BASELINE_SLIPPAGE, gt=0.0, lt=1.0)
    trade_sizes_usd: list[float] = Field(default_factory=lambda: list(DEFAULT_TRADE_SIZES_USD))
    max_retries: int = Field(default=DEFAULT_MAX_RETRIES, ge=0)
    price_gap_limit: int = Field(default=DEFAULT_PRICE_GAP_LIMIT, ge=0)
    default_fee: float = Field(default=DEFAULT_POOL_FEE, ge=0.0, lt=1.0)
    max_workers: int = Field(default=DEFAULT_MAX_WORKERS, gt=0)

    # Logging
    verbose: bool = False
    debug: bool = False

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            _FileSettingsSource(settings_cls),
            file_secret_settings,
        )

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        value = value.lower()
        if value not in {"text", "csv"}:
            raise ValueError(f"unknown output format {value!r} (expected text or csv)")
        return value

    def policy_params(self) -> PolicyParams:
        return PolicyParams(
            failed_tx_gas_fraction=self.failed_tx_gas_fraction,
            base_fee_step=self.base_fee_step,
            epsilon=self.epsilon,
            search_tolerance=self.search_tolerance,
            max_search_iters=self.max_search_iters,
            window=self.window,
            min_observations=self.min_observations,
        )

    def replay_config(
        self,
        block_range: tuple[int, int],
        base_fee_usd: float | None = None,
        pools: list[str] | None = None,
    ) -> ReplayConfig:
        try:
            return ReplayConfig(
                block_range=block_range,
                trade_sizes_usd=list(self.trade_sizes_usd),
                base_fee_usd=self.base_fee_usd if base_fee_usd is None else base_fee_usd,
                baseline_slippage=self.baseline_slippage,
                policy_params=self.policy_params(),
                max_retries=self.max_retries,
                pools=pools,
                max_workers=self.max_workers,
            )
        except ValidationError as exc:
            raise DomainError(str(exc)) from exc


def load_config(
    project_dir: Path | None = None,
    config_file: Path | None = None,
    **overrides: Any,
) -> SlipGuardConfig:
    """Load configuration from multiple sources with precedence:
    CLI flags > env vars > .slipguard.yaml > pyproject.toml > defaults.
    """
    file_config: dict[str, Any] = {}

    if config_file is not None:
        if not config_file.exists():
            raise ConfigError(f"config file not found: {config_file}")
        file_config = _load_yaml(config_file)
    elif project_dir:
        yaml_path = project_dir / CONFIG_FILE_NAME
        if yaml_path.exists():
            file_config = _load_yaml(yaml_path)
        else:
            pyproject = project_dir / "pyproject.toml"
            if pyproject.exists():
                file_config = _load_pyproject(pyproject)

    flags = {k: v for k, v in overrides.items() if v is not None}

    token = _file_values.set(file_config)
    try:
        return SlipGuardConfig(**flags)
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    finally:
        _file_values.reset(token)


def _load_yaml(path: Path) -> dict[str, Any]:
    """Load configuration from a YAML file."""
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return data if isinstance(data, dict) else {}


def _load_pyproject(path: Path) -> dict[str, Any]:
    """Load [tool.slipguard] section from pyproject.toml."""
    import tomllib

    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError):
        return {}
    return data.get("tool", {}).get("slipguard", {})

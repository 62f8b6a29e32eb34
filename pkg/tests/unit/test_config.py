"""Tests for configuration loading."""

from __future__ import annotations

from pathlib import Path

import pytest

from slipguard.config import SlipGuardConfig, load_config
from slipguard.exceptions import ConfigError, DomainError


class TestSlipGuardConfig:

    def test_defaults(self) -> None:
        config = SlipGuardConfig()
        assert config.window == 2000
        assert config.failed_tx_gas_fraction == 0.25
        assert config.base_fee_step == 0.125
        assert config.baseline_slippage == 0.005
        assert config.trade_sizes_usd == [10.0, 100.0, 1000.0, 10000.0, 100000.0]
        assert config.output_format == "text"

    def test_env_prefix(self) -> None:
        config = SlipGuardConfig()
        assert config.model_config["env_prefix"] == "SLIPGUARD_"

    def test_env_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("SLIPGUARD_WINDOW", "500")
        assert SlipGuardConfig().window == 500

    def test_policy_params(self) -> None:
        params = SlipGuardConfig(window=300, base_fee_step=0.2).policy_params()
        assert params.window == 300
        assert params.retry_fee_multiple == pytest.approx(0.45)

    def test_replay_config(self) -> None:
        config = SlipGuardConfig(trade_sizes_usd=[10.0]).replay_config((5, 50), base_fee_usd=8.0)
        assert config.block_range == (5, 50)
        assert config.base_fee_usd == 8.0
        assert config.trade_sizes_usd == [10.0]

    def test_replay_config_empty_range(self) -> None:
        with pytest.raises(DomainError):
            SlipGuardConfig().replay_config((10, 10))


class TestLoadConfig:

    def test_overrides(self, tmp_path: Path) -> None:
        config = load_config(project_dir=tmp_path, window=100, seed=None)
        assert config.window == 100
        assert config.seed == 0

    def test_yaml_config(self, tmp_path: Path) -> None:
        (tmp_path / ".slipguard.yaml").write_text("window: 400\nbaseline_slippage: 0.01\n")
        config = load_config(project_dir=tmp_path)
        assert config.window == 400
        assert config.baseline_slippage == 0.01

    def test_flags_beat_yaml(self, tmp_path: Path) -> None:
        (tmp_path / ".slipguard.yaml").write_text("window: 400\n")
        assert load_config(project_dir=tmp_path, window=50).window == 50

    def test_env_beats_yaml(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        (tmp_path / ".slipguard.yaml").write_text("window: 400\nmax_retries: 7\n")
        monkeypatch.setenv("SLIPGUARD_WINDOW", "500")
        config = load_config(project_dir=tmp_path)
        assert config.window == 500
        assert config.max_retries == 7

    def test_env_beats_pyproject(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        (tmp_path / "pyproject.toml").write_text("[tool.slipguard]\nmax_retries = 3\n")
        monkeypatch.setenv("SLIPGUARD_MAX_RETRIES", "9")
        assert load_config(project_dir=tmp_path).max_retries == 9

    def test_flags_beat_env(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("SLIPGUARD_WINDOW", "500")
        assert load_config(project_dir=tmp_path, window=50).window == 50

    def test_file_values_do_not_leak(self, tmp_path: Path) -> None:
        (tmp_path / ".slipguard.yaml").write_text("window: 400\n")
        load_config(project_dir=tmp_path)
        assert SlipGuardConfig().window == 2000

    def test_pyproject_section(self, tmp_path: Path) -> None:
        (tmp_path / "pyproject.toml").write_text("[tool.slipguard]\nmax_retries = 3\n")
        assert load_config(project_dir=tmp_path).max_retries == 3

    def test_explicit_file(self, tmp_path: Path) -> None:
        path = tmp_path / "custom.yaml"
        path.write_text("base_fee_usd: 2.0\n")
        assert load_config(config_file=path).base_fee_usd == 2.0

    def test_missing_explicit_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigError):
            load_config(config_file=tmp_path / "absent.yaml")

    def test_malformed_yaml(self, tmp_path: Path) -> None:
        (tmp_path / ".slipguard.yaml").write_text("window: [1, 2\n")
        with pytest.raises(ConfigError):
            load_config(project_dir=tmp_path)

    @pytest.mark.parametrize(
        "overrides",
        [{"window": 0}, {"baseline_slippage": 1.5}, {"output_format": "html"}, {"epsilon": 0.5}],
    )
    def test_invalid_values(self, tmp_path: Path, overrides: dict[str, object]) -> None:
        with pytest.raises(ConfigError):
            load_config(project_dir=tmp_path, **overrides)

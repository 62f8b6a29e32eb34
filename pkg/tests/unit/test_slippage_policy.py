"""Tests for the slippage tolerance policy."""

from __future__ import annotations

import logging
import math

import numpy as np
import pytest

from slipguard.amm.cpmm import swap_output
from slipguard.exceptions import NotEnoughDataError
from slipguard.game.sandwich import is_attackable, optimal_attack
from slipguard.models.attack import BindingConstraint
from slipguard.models.pool import PoolState, TradeIntent
from slipguard.models.slippage import PolicyParams, Regime, SlippageHistory
from slipguard.policy.slippage_policy import attack_free_bound, choose_slippage, failure_cost_bound
from slipguard.stats.slippage import failure_probability, tail_expectation
from tests.helpers import make_history

POOL = PoolState(reserve_x=1e6, reserve_y=1e6, fee=0.003)
RETRY_FEE_MULTIPLE = PolicyParams().retry_fee_multiple


def _intent(fee_ratio: float) -> TradeIntent:
    """An intent whose base fee is ``fee_ratio`` of its quoted output."""
    quote = swap_output(POOL, 1000.0)
    return TradeIntent(input_x=1000.0, slippage=0.005, base_fee_y=fee_ratio * quote, pool=POOL)


def _scan_bound(window: np.ndarray, fee_term: float, step: float = 1e-5) -> float:
    """First tolerance on a ``step`` grid over [0, 1] whose retry cost does not exceed it."""
    values = np.sort(window)
    n = values.size
    grid = np.arange(0.0, 1.0 + step / 2.0, step)
    idx = np.searchsorted(values, grid, side="right")
    count = n - idx
    suffix = np.concatenate((np.cumsum(values[::-1])[::-1], [0.0]))
    p = count / n
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = p / (1.0 - p) * (fee_term + suffix[idx] / count)
    cost = np.where(count == 0, 0.0, np.where(count == n, np.inf, cost))
    settled = grid >= cost
    assert settled.any()
    return float(grid[np.argmax(settled)])


def _retry_cost(history: SlippageHistory, at_block: int, s: float, fee_term: float) -> float:
    p = failure_probability(history, at_block, s)
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return math.inf
    return p / (1.0 - p) * (fee_term + tail_expectation(history, at_block, s))


def _random_window(rng: np.random.Generator) -> np.ndarray:
    size = int(rng.integers(10, 300))
    if rng.random() < 0.5:
        return rng.uniform(-0.02, 0.2, size=size)
    return rng.normal(0.0, float(10 ** rng.uniform(-4, -2)), size=size)


class TestAttackFreeBound:

    def test_twice_the_fee_share(self) -> None:
        assert attack_free_bound(_intent(0.001)) == pytest.approx(0.002)

    def test_capped_at_one(self) -> None:
        assert attack_free_bound(_intent(0.8)) == 1.0

    def test_zero_fee(self) -> None:
        assert attack_free_bound(_intent(0.0)) == 0.0

    def test_non_increasing_in_trade_size(self) -> None:
        bounds = np.array(
            [
                attack_free_bound(TradeIntent(input_x=float(v), slippage=0.005, base_fee_y=5.0, pool=POOL))
                for v in np.geomspace(1.0, 1e5, 200)
            ]
        )
        assert np.all(np.diff(bounds) <= 0.0)
        assert bounds[0] == 1.0
        assert bounds[-1] < 1e-3


class TestFailureCostBound:

    def test_step_function_crossing(self) -> None:
        # above 0.06: p = 0.4, tail mean 0.085, cost 2/3 * 0.085375 < 0.06
        # on [0.05, 0.06): p = 0.5, cost 0.080375 > s
        history = make_history([0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10])
        assert failure_cost_bound(_intent(0.001), history, at_block=10) == pytest.approx(0.06)

    def test_matches_dense_scan(self) -> None:
        values = [0.01 * i for i in range(1, 11)]
        bound = failure_cost_bound(_intent(0.001), make_history(values), at_block=10)
        assert abs(bound - _scan_bound(np.array(values), RETRY_FEE_MULTIPLE * 0.001)) <= 1e-4

    def test_random_windows_match_dense_scan(self) -> None:
        rng = np.random.default_rng(41)
        for _ in range(200):
            window = _random_window(rng)
            ratio = float(rng.uniform(0.0, 0.01))
            history = make_history(window.tolist())
            bound = failure_cost_bound(_intent(ratio), history, at_block=window.size)
            assert abs(bound - _scan_bound(window, RETRY_FEE_MULTIPLE * ratio)) <= 1e-4

    def test_first_crossing(self) -> None:
        rng = np.random.default_rng(43)
        for _ in range(100):
            window = _random_window(rng)
            ratio = float(rng.uniform(0.0, 0.01))
            fee_term = RETRY_FEE_MULTIPLE * ratio
            history = make_history(window.tolist())
            t = window.size
            bound = failure_cost_bound(_intent(ratio), history, at_block=t)
            assert _retry_cost(history, t, bound, fee_term) <= bound * (1.0 + 1e-9) + 1e-15
            below = bound - 1e-9
            if below <= 0.0:
                continue
            probes = np.concatenate((np.linspace(0.0, below, 100), window[(window >= 0.0) & (window < below)]))
            for s in probes:
                assert _retry_cost(history, t, float(s), fee_term) > s

    def test_quiet_window(self) -> None:
        history = make_history([0.0] * 20)
        assert failure_cost_bound(_intent(0.001), history, at_block=20) == 0.0

    def test_single_observation(self) -> None:
        history = make_history([0.05])
        params = PolicyParams(min_observations=1)
        assert failure_cost_bound(_intent(0.001), history, 1, params) == pytest.approx(0.05)

    def test_hopeless_window_hits_ceiling(self, caplog: pytest.LogCaptureFixture) -> None:
        history = make_history([2.0] * 10)
        with caplog.at_level(logging.WARNING):
            bound = failure_cost_bound(_intent(0.001), history, at_block=10)
        assert bound == pytest.approx(1.0 - PolicyParams().epsilon)
        assert "retry cost" in caplog.text

    def test_higher_fees_raise_the_bound(self) -> None:
        history = make_history([0.001 * i for i in range(1, 41)])
        cheap = failure_cost_bound(_intent(0.0001), history, at_block=40)
        dear = failure_cost_bound(_intent(0.01), history, at_block=40)
        assert cheap <= dear

    def test_insufficient_history(self) -> None:
        history = make_history([0.01] * 5)
        with pytest.raises(NotEnoughDataError):
            failure_cost_bound(_intent(0.001), history, at_block=5)


class TestChooseSlippage:

    def test_unavoidable_regime(self) -> None:
        history = make_history([0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10])
        advice = choose_slippage(_intent(0.001), history, at_block=10)
        assert advice.regime == Regime.UNAVOIDABLE
        assert advice.chosen == pytest.approx(0.06)
        assert advice.s_a == pytest.approx(0.002)
        assert advice.diagnostics.failure_probability == pytest.approx(0.4)
        assert advice.diagnostics.tail_expectation == pytest.approx(0.085)
        assert not advice.diagnostics.low_confidence

    def test_attack_free_regime(self) -> None:
        params = PolicyParams()
        history = make_history([0.0] * 20)
        intent = _intent(0.001)
        advice = choose_slippage(intent, history, at_block=20, params=params)
        assert advice.regime == Regime.ATTACK_FREE
        assert advice.chosen == pytest.approx(advice.s_a - params.epsilon)
        assert advice.s_r == 0.0
        chosen = intent.with_slippage(advice.chosen)
        assert not is_attackable(chosen)
        assert optimal_attack(chosen, base_fee_x=intent.base_fee_y).binding_constraint == BindingConstraint.NO_ATTACK

    def test_stable_when_epsilon_halves(self) -> None:
        rng = np.random.default_rng(47)
        for _ in range(200):
            window = rng.normal(0.0, 1e-4, size=int(rng.integers(10, 300)))
            intent = _intent(float(rng.uniform(0.005, 0.02)))
            history = make_history(window.tolist())
            epsilon = float(10 ** rng.uniform(-7, -3))
            coarse = choose_slippage(intent, history, window.size, PolicyParams(epsilon=epsilon))
            fine = choose_slippage(intent, history, window.size, PolicyParams(epsilon=epsilon / 2.0))
            assert coarse.regime == fine.regime == Regime.ATTACK_FREE
            assert abs(coarse.chosen - fine.chosen) <= 2.0 * epsilon

    def test_ignores_later_blocks(self) -> None:
        rng = np.random.default_rng(53)
        values = rng.normal(0.0, 1e-3, size=400)
        for t in (20, 150, 399):
            tampered = np.concatenate((values[:t], rng.uniform(-1.0, 1.0, size=400 - t)))
            original = choose_slippage(_intent(0.001), make_history(values.tolist()), t)
            changed = choose_slippage(_intent(0.001), make_history(tampered.tolist()), t)
            assert changed == original

    def test_short_quiet_window_is_low_confidence(self) -> None:
        advice = choose_slippage(_intent(0.001), make_history([0.0] * 20), at_block=20)
        assert advice.diagnostics.low_confidence
        assert advice.diagnostics.window_size == 20
        assert advice.diagnostics.notes

    def test_full_quiet_window_is_confident(self) -> None:
        params = PolicyParams(window=20)
        advice = choose_slippage(_intent(0.001), make_history([0.0] * 40), at_block=40, params=params)
        assert not advice.diagnostics.low_confidence

    def test_tiny_attack_free_bound_is_halved(self) -> None:
        params = PolicyParams(epsilon=1e-3)
        advice = choose_slippage(_intent(0.0001), make_history([0.0] * 20), at_block=20, params=params)
        assert advice.regime == Regime.ATTACK_FREE
        assert advice.chosen == pytest.approx(advice.s_a / 2)

    def test_zero_bounds_fall_back_to_epsilon(self) -> None:
        params = PolicyParams()
        advice = choose_slippage(_intent(0.0), make_history([0.0] * 20), at_block=20, params=params)
        assert advice.regime == Regime.UNAVOIDABLE
        assert advice.chosen == params.epsilon

    def test_ceiling_is_below_one(self) -> None:
        advice = choose_slippage(_intent(0.001), make_history([2.0] * 10), at_block=10)
        assert advice.chosen < 1.0
        assert advice.regime == Regime.UNAVOIDABLE
        assert advice.diagnostics.notes

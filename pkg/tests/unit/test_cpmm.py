"""Tests for constant product swap arithmetic."""

from __future__ import annotations

import math

import numpy as np
import pytest

from slipguard.amm.cpmm import (
    apply_swap,
    apply_swap_y,
    expected_output,
    spot_price_y_in_x,
    swap_input_for_output,
    swap_output,
    swap_output_y,
)
from slipguard.exceptions import ArithmeticOverflowError, DomainError, InfeasibleQuoteError
from slipguard.models.pool import PoolState, TradeIntent
from tests.helpers import exact_swap_output


class TestSwapOutput:

    def test_worked_example_quote(self, worked_pool: PoolState) -> None:
        assert swap_output(worked_pool, 10.0) == pytest.approx(9.066, abs=1e-3)

    def test_matches_exact_arithmetic(self) -> None:
        rng = np.random.default_rng(11)
        for _ in range(500):
            x, y = 10 ** rng.uniform(2, 8, size=2)
            fee = float(rng.choice([0.0, 0.003, 0.01]))
            d = float(x * 10 ** rng.uniform(-6, 1))
            pool = PoolState(reserve_x=x, reserve_y=y, fee=fee)
            exact = exact_swap_output(x, y, fee, d)
            assert swap_output(pool, d) == pytest.approx(float(exact), rel=1e-12)

    def test_output_stays_below_reserve(self, worked_pool: PoolState) -> None:
        assert swap_output(worked_pool, 1e6) < worked_pool.reserve_y

    @pytest.mark.parametrize("amount", [0.0, -1.0])
    def test_rejects_non_positive_input(self, worked_pool: PoolState, amount: float) -> None:
        with pytest.raises(DomainError):
            swap_output(worked_pool, amount)

    def test_rejects_non_finite_input(self, worked_pool: PoolState) -> None:
        with pytest.raises(ArithmeticOverflowError):
            swap_output(worked_pool, math.inf)

    def test_reverse_direction(self, worked_pool: PoolState) -> None:
        assert swap_output_y(worked_pool, 10.0) == pytest.approx(swap_output(worked_pool, 10.0))

    def test_increasing_in_input(self) -> None:
        rng = np.random.default_rng(21)
        for _ in range(1000):
            x, y = 10 ** rng.uniform(2, 8, size=2)
            pool = PoolState(reserve_x=x, reserve_y=y, fee=float(rng.choice([0.0, 0.003, 0.01, 0.3])))
            small = float(x * 10 ** rng.uniform(-6, 0))
            large = small * (1.0 + float(rng.uniform(1e-6, 1.0)))
            assert swap_output(pool, small) < swap_output(pool, large)

    def test_decreasing_in_fee(self) -> None:
        rng = np.random.default_rng(22)
        for _ in range(1000):
            x, y = 10 ** rng.uniform(2, 8, size=2)
            d = float(x * 10 ** rng.uniform(-6, 0))
            low = float(rng.uniform(0.0, 0.5))
            high = low + float(rng.uniform(1e-4, 0.4))
            cheap = swap_output(PoolState(reserve_x=x, reserve_y=y, fee=low), d)
            dear = swap_output(PoolState(reserve_x=x, reserve_y=y, fee=high), d)
            assert dear < cheap

    def test_no_free_lunch(self) -> None:
        rng = np.random.default_rng(23)
        for _ in range(1000):
            x, y = 10 ** rng.uniform(2, 8, size=2)
            fee = float(rng.choice([0.0, 0.003, 0.01]))
            pool = PoolState(reserve_x=x, reserve_y=y, fee=fee)
            d = float(x * 10 ** rng.uniform(-6, 1))
            after, out = apply_swap(pool, d)
            back = swap_output_y(after, out)
            assert back <= d * (1.0 + 1e-12)
            if fee > 0.0:
                assert back < d


class TestInverseQuote:

    def test_round_trip(self) -> None:
        rng = np.random.default_rng(3)
        for _ in range(10_000):
            x, y = 10 ** rng.uniform(2, 8, size=2)
            pool = PoolState(reserve_x=x, reserve_y=y, fee=float(rng.choice([0.0, 0.003, 0.01])))
            out = float(y * rng.uniform(1e-6, 0.9))
            needed = swap_input_for_output(pool, out)
            assert swap_output(pool, needed) == pytest.approx(out, rel=1e-9)

    def test_worked_example(self, worked_pool: PoolState) -> None:
        assert swap_input_for_output(worked_pool, swap_output(worked_pool, 10.0)) == pytest.approx(10.0)

    def test_whole_reserve_is_infeasible(self, worked_pool: PoolState) -> None:
        with pytest.raises(InfeasibleQuoteError):
            swap_input_for_output(worked_pool, 100.0)

    def test_infeasible_is_a_domain_error(self, worked_pool: PoolState) -> None:
        with pytest.raises(DomainError):
            swap_input_for_output(worked_pool, 150.0)


class TestApplySwap:

    def test_reserves_move(self, worked_pool: PoolState) -> None:
        after, out = apply_swap(worked_pool, 10.0)
        assert after.reserve_x == 110.0
        assert after.reserve_y == pytest.approx(100.0 - out)
        assert after.fee == worked_pool.fee

    def test_product_grows_with_fee(self, worked_pool: PoolState) -> None:
        after, _ = apply_swap(worked_pool, 10.0)
        assert after.product > worked_pool.product

    def test_product_constant_without_fee(self) -> None:
        pool = PoolState(reserve_x=100.0, reserve_y=100.0, fee=0.0)
        after, _ = apply_swap(pool, 10.0)
        assert after.product == pytest.approx(pool.product, rel=1e-12)

    def test_y_to_x(self, worked_pool: PoolState) -> None:
        after, out = apply_swap_y(worked_pool, 5.0)
        assert after.reserve_y == 105.0
        assert after.reserve_x == pytest.approx(100.0 - out)

    def test_input_is_not_mutated(self, worked_pool: PoolState) -> None:
        apply_swap(worked_pool, 10.0)
        assert worked_pool.reserve_x == 100.0


class TestPrices:

    def test_spot_price(self) -> None:
        pool = PoolState(reserve_x=2000.0, reserve_y=1.0)
        assert spot_price_y_in_x(pool) == 2000.0

    def test_expected_output_uses_intent_pool(self, worked_intent: TradeIntent) -> None:
        assert expected_output(worked_intent) == swap_output(worked_intent.pool, 10.0)

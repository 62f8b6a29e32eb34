"""Constant product market maker arithmetic."""

from slipguard.amm.cpmm import (
    apply_swap,
    apply_swap_y,
    expected_output,
    spot_price_y_in_x,
    swap_input_for_output,
    swap_output,
    swap_output_y,
)

__all__ = [
    "apply_swap",
    "apply_swap_y",
    "expected_output",
    "spot_price_y_in_x",
    "swap_input_for_output",
    "swap_output",
    "swap_output_y",
]

"""Number formatting shared by CSV and text renderings."""

from __future__ import annotations

import math


def sci(value: float) -> str:
    """Scientific notation with four significant digits; infinities as ``inf``."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.3E}"


def size(value: float) -> str:
    return f"{value:g}"

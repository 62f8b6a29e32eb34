"""Scalar search helpers: golden-section maximisation and predicate bisection."""

from __future__ import annotations

import math
from typing import Callable

from slipguard.constants import DEFAULT_MAX_SEARCH_ITERS
from slipguard.exceptions import SearchError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-12,
    max_iter: int = DEFAULT_MAX_SEARCH_ITERS,
) -> float:
    """Argmax of a unimodal ``func`` on ``[lo, hi]``.

    Stops once the bracket is narrower than ``rel_tol`` relative to its upper
    end. Raises SearchError when ``max_iter`` is exhausted first.
    """
    if not lo < hi:
        raise SearchError("empty golden-section bracket", (lo, hi))
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= rel_tol * max(abs(b), 1e-300):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    else:
        raise SearchError("golden-section search did not converge", (a, b))
    return c if fc >= fd else d


def bracket_max(
    func: Callable[[float], float],
    start: float,
    factor: float = 2.0,
    max_iter: int = DEFAULT_MAX_SEARCH_ITERS,
) -> tuple[float, float]:
    """Bracket the peak of a unimodal ``func`` on ``(0, inf)`` by geometric steps from ``start``.

    Returns ``(lo, hi)`` with ``func(lo) <= func(mid) >= func(hi)`` for some
    interior ``mid``.
    """
    mid, f_mid = start, func(start)
    lo = mid / factor
    f_lo = func(lo)
    steps = 0
    while f_lo > f_mid:
        mid, f_mid = lo, f_lo
        lo = mid / factor
        f_lo = func(lo)
        steps += 1
        if steps >= max_iter:
            raise SearchError("peak not bracketed while stepping down", (lo, mid))
    hi = mid * factor
    f_hi = func(hi)
    while f_hi > f_mid:
        lo, mid, f_mid = mid, hi, f_hi
        hi = mid * factor
        f_hi = func(hi)
        steps += 1
        if steps >= max_iter or not math.isfinite(hi):
            raise SearchError("peak not bracketed while stepping up", (lo, hi))
    return lo, hi


def bisect_predicate(
    pred: Callable[[float], bool],
    lo: float,
    hi: float,
    abs_tol: float = 0.0,
    max_iter: int = DEFAULT_MAX_SEARCH_ITERS,
) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around the switch of a monotone predicate.

    ``pred(lo)`` must be False and ``pred(hi)`` True; both stay so for the
    returned bracket. With ``abs_tol`` 0 the search runs until the midpoint
    can no longer be separated from either end in floating point.
    """
    for _ in range(max_iter):
        mid = lo + (hi - lo) / 2.0
        if mid <= lo or mid >= hi or hi - lo <= abs_tol:
            return lo, hi
        if pred(mid):
            hi = mid
        else:
            lo = mid
    if hi - lo <= abs_tol:
        return lo, hi
    raise SearchError("bisection did not converge", (lo, hi))

"""Async utilities for running blocking cells concurrently."""

from __future__ import annotations

from typing import Any, Callable, TypeVar

import anyio
from anyio import to_thread

T = TypeVar("T")


async def gather_in_threads(
    funcs: list[Callable[[], T]],
    limit: int = 4,
) -> list[T]:
    """Run synchronous callables in worker threads, at most ``limit`` at a time.

    Results come back in the order of ``funcs`` regardless of completion order.
    """
    limiter = anyio.CapacityLimiter(limit)
    results: list[Any] = [None] * len(funcs)

    async def run_one(index: int, func: Callable[[], T]) -> None:
        results[index] = await to_thread.run_sync(func, limiter=limiter)

    async with anyio.create_task_group() as tg:
        for index, func in enumerate(funcs):
            tg.start_soon(run_one, index, func)
    return results

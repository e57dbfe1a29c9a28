"""Order-preserving map over a process pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """``list(map(func, items))``, run on ``jobs`` worker processes when jobs > 1.

    Results come back in input order, so callers stay deterministic regardless
    of scheduling.  ``func`` must be a picklable top-level function.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))

"""Ordered worker map."""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int) -> int:
    """0 means one worker per CPU."""
    if threads <= 0:
        return os.cpu_count() or 1
    return threads


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply ``fn`` to every item and return results in input order.

    Work runs on a thread pool when more than one worker is requested; the
    result list never depends on completion order.
    """
    items = list(items)
    workers = min(resolve_threads(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))

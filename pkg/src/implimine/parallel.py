"""Deterministic fan-out helper.

Work items are independent pure computations; results come back in input
order, and every per-item numeric reduction uses numpy's pairwise summation
whose shape depends only on the array, never on the worker count. Outputs
are therefore byte-identical for any number of threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int) -> int:
    """0 means auto (cpu count); negatives are rejected by the CLI."""
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


def deterministic_map(
    fn: Callable[[T], R], items: Sequence[T], threads: int = 1
) -> list[R]:
    """Order-preserving map, optionally spread over a thread pool."""
    workers = resolve_threads(threads)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))

"""Order-preserving fan-out for independent numerical tasks."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

_LOGGER = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    max_workers: int = 1,
) -> list[R]:
    """Apply ``func`` to every item and return results in input order.

    LAPACK calls release the GIL, so threads give real parallelism for the
    eigensolves and tensor contractions this package fans out. Results never
    depend on scheduling: each task is a pure function of its item.
    """
    work = list(items)
    if max_workers < 1:
        raise ValueError("max_workers must be at least 1")
    if max_workers == 1 or len(work) <= 1:
        return [func(item) for item in work]

    _LOGGER.debug("Dispatching %d task(s) to %d worker(s)", len(work), max_workers)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(func, work))

"""Optional process-level parallelism controlled by ``QPI_THREADS``."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get("QPI_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"QPI_THREADS must be a positive integer, got {raw!r}") from None


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Ordered map; runs in a process pool when more than one worker is configured.

    ``fn`` must be a module-level function so it can be pickled.
    """
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))

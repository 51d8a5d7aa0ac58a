"""Thread-pool fan-out for the exhaustive sweeps.

Work items are pure functions of their inputs; results always come back in
submission order so every merge downstream is deterministic whatever the
worker count.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import structlog

from liekit.config import get_settings

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        return get_settings().threads
    if threads < 1:
        raise ValueError("threads must be at least 1")
    return threads


def run_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Apply ``fn`` to every item, in parallel when ``threads > 1``."""
    workers = resolve_threads(threads)
    work = list(items)
    if workers == 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="liekit") as pool:
        return list(pool.map(fn, work))


def index_chunks(total: int, chunk_size: int) -> Iterator[range]:
    for start in range(0, total, chunk_size):
        yield range(start, min(start + chunk_size, total))


def run_chunks(
    fn: Callable[[range], R],
    total: int,
    chunk_size: int,
    threads: int | None = None,
    event: str = "workers.chunk_completed",
) -> list[R]:
    """Partition ``range(total)`` into chunks and run ``fn`` on each, in order."""

    def _run(chunk: range) -> R:
        result = fn(chunk)
        logger.info(event, start=chunk.start, stop=chunk.stop, total=total)
        return result

    return run_ordered(_run, index_chunks(total, chunk_size), threads)

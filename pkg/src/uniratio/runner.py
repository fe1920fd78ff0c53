"""Job runner: executes independent numeric jobs with timing logs, serially or on a thread pool."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, TypeVar

logger = logging.getLogger("uniratio")

T = TypeVar("T")
R = TypeVar("R")


class JobRunner:
    """Execution layer shared by the services.

    Results of :meth:`map` come back in input order whatever the thread count,
    so reports are deterministic.
    """

    def __init__(self, threads: int = 0) -> None:
        if threads < 0:
            raise ValueError("threads must be nonnegative")
        self.threads = threads
        self._pool: ThreadPoolExecutor | None = None

    def run(self, label: str, func: Callable[..., R], *args: Any, **kwargs: Any) -> R:
        """Run one job and log how long it took; exceptions propagate unchanged."""
        logger.debug("%s started", label)
        start = time.monotonic()
        try:
            return func(*args, **kwargs)
        finally:
            elapsed = time.monotonic() - start
            logger.debug("%s finished (%.3fs)", label, elapsed)

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``func`` to every item; fans out when threads > 0."""
        items = list(items)
        label = getattr(func, "__name__", "job")
        start = time.monotonic()
        if self.threads == 0 or len(items) < 2:
            results = [func(item) for item in items]
        else:
            results = list(self._executor().map(func, items))
        elapsed = time.monotonic() - start
        logger.debug("%s over %d item(s) on %d thread(s) (%.3fs)", label, len(items), self.threads, elapsed)
        return results

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def _executor(self) -> ThreadPoolExecutor:
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="uniratio")
        return self._pool

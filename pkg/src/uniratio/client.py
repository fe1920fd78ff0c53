"""Main uniratio facade."""

from __future__ import annotations

import logging
from typing import Any

from .runner import JobRunner
from .services import FamilyService, OracleService, SolverService
from .settings import DEFAULT_POINTS, DEFAULT_TOLERANCE, Settings, threads_from_env

logger = logging.getLogger("uniratio")


class UniRatio:
    """Entry point to the limit-ratio solver, the finite oracle and the named families.

    Example:
        >>> from uniratio import UniRatio
        >>> with UniRatio() as ur:
        ...     pair = ur.families.source(ur.families.params({"family": "P", "a": 2, "b": 3}))
        ...     round(ur.solver.limit_ratio(pair).lc, 12)
        0.132809509897

    Args:
        threads: Worker threads for row-level fan-out (default: UNIRATIO_THREADS, else 0 = serial).
        tolerance: Band around |z| = 1 for the modulus census (default: 1e-7).
        points: Default Riemann sample count (default: 1_000_000).
    """

    def __init__(
        self,
        *,
        threads: int | None = None,
        tolerance: float = DEFAULT_TOLERANCE,
        points: int = DEFAULT_POINTS,
    ) -> None:
        resolved_threads = threads_from_env() if threads is None else threads
        self.settings = Settings(threads=resolved_threads, tolerance=tolerance, points=points)
        self._runner = JobRunner(threads=self.settings.threads)

        self.solver = SolverService(self._runner, self.settings)
        self.oracle = OracleService(self._runner, self.settings)
        self.families = FamilyService(self._runner, self.settings)
        logger.debug("facade ready: %s", self.settings)

    def close(self) -> None:
        """Shut down the worker pool, if one was started."""
        self._runner.close()

    def __enter__(self) -> UniRatio:
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()

    def __repr__(self) -> str:
        return (
            f"UniRatio(threads={self.settings.threads!r}, tolerance={self.settings.tolerance!r}, "
            f"points={self.settings.points!r})"
        )

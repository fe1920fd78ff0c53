"""Run settings shared by the facade and its services."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping

from .exceptions import InvalidSpecError

THREADS_ENV = "UNIRATIO_THREADS"
DEFAULT_TOLERANCE = 1e-7
DEFAULT_POINTS = 1_000_000


@dataclass(frozen=True)
class Settings:
    """Parallelism, modulus census band and default Riemann sample count.

    ``threads=0`` runs every job serially in the calling thread.
    """

    threads: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    points: int = DEFAULT_POINTS

    def __post_init__(self) -> None:
        if self.threads < 0:
            raise InvalidSpecError(f"threads must be nonnegative, got {self.threads}")
        if not 0 < self.tolerance < 0.1:
            raise InvalidSpecError(f"tolerance must lie in (0, 0.1), got {self.tolerance}")
        if self.points < 1:
            raise InvalidSpecError(f"points must be positive, got {self.points}")


def threads_from_env(environ: Mapping[str, str] | None = None) -> int:
    """Thread count from UNIRATIO_THREADS; unset or empty means serial."""
    raw = (os.environ if environ is None else environ).get(THREADS_ENV, "").strip()
    if not raw:
        return 0
    try:
        threads = int(raw)
    except ValueError as exc:
        raise InvalidSpecError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if threads < 0:
        raise InvalidSpecError(f"{THREADS_ENV} must be nonnegative, got {threads}")
    return threads

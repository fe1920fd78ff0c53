"""Base service class."""

from __future__ import annotations

from typing import Any, Callable, Iterable, TypeVar

from ..runner import JobRunner
from ..settings import Settings

T = TypeVar("T")
R = TypeVar("R")


class Service:
    """Base class for the facade's services: holds the shared runner and settings."""

    def __init__(self, runner: JobRunner, settings: Settings) -> None:
        self._runner = runner
        self._settings = settings

    def _run(self, label: str, func: Callable[..., R], *args: Any, **kwargs: Any) -> R:
        return self._runner.run(label, func, *args, **kwargs)

    def _map(self, func: Callable[[T], R], items: Iterable[T]) -> list[R]:
        return self._runner.map(func, items)

"""Limit-ratio service."""

from __future__ import annotations

from ..solver import (
    LimitRatioResult,
    PairSource,
    as_pair,
    find_crossings,
    limit_ratio,
    limit_ratio_riemann,
    mahler_limit,
)
from ..table2 import Table2Row, reproduce_table2
from ..trig import to_chebyshev
from .base import Service


class SolverService(Service):
    """Limit ratios, crossings and limit Mahler measures of specs and curve pairs."""

    def limit_ratio(
        self,
        source: PairSource,
        *,
        method: str = "exact",
        points: int | None = None,
        mahler: bool = False,
    ) -> LimitRatioResult:
        """Limit ratio by the exact solver or the Riemann sampler.

        Args:
            source: Family spec (palindromic b) or curve pair.
            method: ``"exact"`` or ``"riemann"``.
            points: Riemann sample count; defaults to the facade setting.
            mahler: Also compute the limit Mahler measure (exact method only).

        Returns:
            The result; ``mahler`` is filled in when requested.
        """
        label = getattr(source, "label", None) or str(source)
        result = self._run(
            f"limit ratio {label}",
            limit_ratio,
            source,
            method=method,
            points=points or self._settings.points,
        )
        if mahler and method == "exact":
            measure = self._run(f"mahler limit {label}", mahler_limit, source, result)
            result = LimitRatioResult(
                lc=result.lc,
                above_set=result.above_set,
                crossings=result.crossings,
                method=result.method,
                residuals=result.residuals,
                mahler=measure,
            )
        return result

    def riemann(self, source: PairSource, *, points: int | None = None, full_period: bool | None = None) -> float:
        return limit_ratio_riemann(source, points or self._settings.points, full_period=full_period)

    def crossings(self, source: PairSource, *, validate: bool = False) -> list[float]:
        """Crossing angles of |f2| and |E| on [0, pi]."""
        return find_crossings(to_chebyshev(as_pair(source).difference()), validate=validate)

    def mahler(self, source: PairSource) -> float:
        return self._run("mahler limit", mahler_limit, source)

    def table2(self) -> list[Table2Row]:
        """Reproduce the bundled table; rows fan out over the runner."""
        return reproduce_table2(mapper=self._map)

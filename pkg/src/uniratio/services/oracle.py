"""Finite-oracle service."""

from __future__ import annotations

from typing import Sequence

from ..family import FamilySpec, IntPolynomial, expand_polynomial
from ..oracle import (
    ConvergenceReport,
    RootCensus,
    c_ratio,
    c_ratio_polynomial,
    census_kind,
    convergence_report,
    count_roots_modulus,
    count_unimodular_signchange,
    erdos_turan_bound,
    erdos_turan_check,
    mahler_univariate,
)
from .base import Service


class OracleService(Service):
    """Root censuses and finite-n ratios; the modulus band comes from the facade settings."""

    def expand(self, spec: FamilySpec, n: int) -> IntPolynomial:
        return expand_polynomial(spec, n)

    def census(self, poly: IntPolynomial) -> RootCensus:
        return count_roots_modulus(poly, self._settings.tolerance)

    def unimodular(self, spec: FamilySpec, n: int, *, cross_check: bool = False) -> int:
        return count_unimodular_signchange(spec, n, cross_check=cross_check, tolerance=self._settings.tolerance)

    def c_ratio(self, spec: FamilySpec, n: int) -> float:
        return c_ratio(spec, n, tolerance=self._settings.tolerance)

    def c_ratio_polynomial(self, poly: IntPolynomial) -> float:
        return c_ratio_polynomial(poly, self._settings.tolerance)

    def erdos_turan_bound(self, spec: FamilySpec, n: int, r: int) -> float:
        return erdos_turan_bound(spec, n, r)

    def erdos_turan_check(self, poly: IntPolynomial, alpha: float, beta: float) -> tuple[float, float]:
        return erdos_turan_check(poly, alpha, beta)

    def convergence(self, spec: FamilySpec, n_list: Sequence[int], lc: float | None = None) -> ConvergenceReport:
        """C against the limit ratio for each n; per-n censuses fan out over the runner."""
        return self._run(
            f"convergence {spec}",
            convergence_report,
            spec,
            n_list,
            lc,
            tolerance=self._settings.tolerance,
            mapper=self._map,
        )

    def mahler(self, poly: IntPolynomial) -> float:
        return mahler_univariate(poly)

    def kind(self, poly: IntPolynomial) -> str:
        """Shape of the root census of ``poly``: cyclotomic, pisot, salem or other."""
        return census_kind(self.census(poly))

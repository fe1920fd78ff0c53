"""Named-family service."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from ..family import FamilySpec, IntPolynomial, validate_spec
from ..named import (
    FamilyParams,
    FamilySource,
    GapScan,
    boyd_lawton_trend,
    family_source,
    gap_scan,
    h_family_spec,
    hbounds,
    salem_power_coeffs,
    specialize_bivariate,
    t_family_crossings,
    t_family_gap,
    t_family_spec,
)
from ..solver import limit_ratio_exact
from .base import Service


@dataclass(frozen=True)
class HBoundsRow:
    m: int
    lower: float
    upper: float
    lc: float

    @property
    def inside(self) -> bool:
        return self.lower < self.lc < self.upper


@dataclass(frozen=True)
class SalemRow:
    """Salem-power family at m: coefficients, limit ratio and closed-form crossing residuals.

    A residual is None when its closed-form cosine falls outside [-1, 1].
    """

    m: int
    b1: int
    b2: int
    lc: float
    cos_alpha: float
    cos_beta: float
    alpha_residual: float | None
    beta_residual: float | None
    lc_bound: float


class FamilyService(Service):
    """Parse, build and tabulate the named families."""

    def spec(self, raw: Mapping[str, Any]) -> FamilySpec:
        return validate_spec(raw)

    def params(self, raw: Mapping[str, Any]) -> FamilyParams:
        return FamilyParams.from_dict(raw)

    def source(self, params: FamilyParams) -> FamilySource:
        return family_source(params)

    def specialize(self, params: FamilyParams, n: int) -> IntPolynomial:
        return specialize_bivariate(params, n)

    def h_spec(self, m: int) -> FamilySpec:
        return h_family_spec(m)

    def t_spec(self, m: int) -> FamilySpec:
        return t_family_spec(m)

    def salem_coeffs(self, m: int) -> tuple[int, int]:
        return salem_power_coeffs(m)

    def hbounds(self, m_values: Iterable[int]) -> list[HBoundsRow]:
        """Analytic bracket and solver limit ratio of the H family for each m."""
        return self._map(_hbounds_row, m_values)

    def salem(self, m_values: Iterable[int]) -> list[SalemRow]:
        """Salem-power family rows for each m."""
        return self._map(_salem_row, m_values)

    def boyd_lawton(self, params: FamilyParams, n_list: Iterable[int]) -> list[tuple[int, float]]:
        return self._run(f"boyd-lawton {params}", boyd_lawton_trend, params, n_list)

    def gap_scan(self, bound: int, k_max: int, l_max: int, top: int = 10) -> GapScan:
        return self._run("gap scan", gap_scan, bound, k_max, l_max, top)


# -- Helpers --


def _hbounds_row(m: int) -> HBoundsRow:
    lower, upper = hbounds(m)
    return HBoundsRow(m=m, lower=lower, upper=upper, lc=limit_ratio_exact(h_family_spec(m)).lc)


def _salem_row(m: int) -> SalemRow:
    spec = t_family_spec(m)
    result = limit_ratio_exact(spec)
    cos_alpha, cos_beta = t_family_crossings(m)
    cosines = [math.cos(theta) for theta in result.crossings]
    return SalemRow(
        m=m,
        b1=spec.b[1],
        b2=spec.b[2],
        lc=result.lc,
        cos_alpha=cos_alpha,
        cos_beta=cos_beta,
        alpha_residual=_nearest(cos_alpha, cosines),
        beta_residual=_nearest(cos_beta, cosines),
        lc_bound=math.acos(max(1.0 - t_family_gap(m), -1.0)) / math.pi,
    )


def _nearest(target: float, values: list[float]) -> float | None:
    if not -1.0 <= target <= 1.0 or not values:
        return None
    return min(abs(target - value) for value in values)

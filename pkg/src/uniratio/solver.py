"""Limit ratio of nonunimodular roots and the limit Mahler measure.

Every computation runs on the canonical half period [0, pi]: |f2| and |E| are
symmetric under t -> 2*pi - t, so measures on [0, 2*pi] are twice those stored.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Union

import numpy as np
import sympy
from scipy.integrate import quad

from .exceptions import DegenerateEnvelopeError, InvalidSpecError, NumericConsistencyError
from .family import FamilySpec
from .roots import isolate_roots
from .trig import ChebPoly, TrigSeries, envelope_series, f2_series, squared_difference, to_chebyshev

logger = logging.getLogger("uniratio")

DEGENERATE_NORM = 1e-14
ZERO_TOLERANCE = 1e-13
CROSSING_RESIDUAL = 1e-12
MERGE_DISTANCE = 1e-12
MIN_CELLS = 256
CELLS_PER_DEGREE = 32
STURM_MAX_DEGREE = 60
QUAD_ABS_TOLERANCE = 1e-10
QUAD_REL_TOLERANCE = 1e-12
QUAD_LIMIT = 200
TINY = 1e-300


@dataclass(frozen=True)
class CurvePair:
    """The two curves compared by the limit ratio, as functions of the angle theta in [0, pi].

    For a family spec theta is t; for a bivariate family theta = pi*u.
    """

    f2: TrigSeries
    envelope: TrigSeries
    label: str = ""

    @classmethod
    def from_spec(cls, spec: FamilySpec) -> CurvePair:
        return cls(f2=f2_series(spec), envelope=envelope_series(spec), label=str(spec))

    def difference(self) -> TrigSeries:
        return squared_difference(self.f2, self.envelope)

    def above(self, theta: Any) -> Any:
        """Indicator of |f2| >= |E| (the f0 of the limit integral)."""
        return np.abs(self.f2(theta)) >= np.abs(self.envelope(theta))


PairSource = Union[FamilySpec, CurvePair]


@dataclass(frozen=True)
class IntervalSet:
    """Sorted disjoint closed intervals inside [0, pi]."""

    intervals: tuple[tuple[float, float], ...] = ()

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> float:
        """Half-period measure; the full-circle measure is twice this."""
        return sum(beta - alpha for alpha, beta in self.intervals)

    @property
    def full_measure(self) -> float:
        return 2.0 * self.measure

    def complement(self) -> IntervalSet:
        pieces: list[tuple[float, float]] = []
        cursor = 0.0
        for alpha, beta in self.intervals:
            if alpha > cursor:
                pieces.append((cursor, alpha))
            cursor = beta
        if cursor < math.pi:
            pieces.append((cursor, math.pi))
        return IntervalSet(tuple(pieces))

    def arc_count(self) -> int:
        """Number of maximal intervals on [0, 2*pi] once mirrored through t -> 2*pi - t."""
        if not self.intervals:
            return 0
        touches_pi = self.intervals[-1][1] >= math.pi
        return 2 * self.count - (1 if touches_pi else 0)

    def contains(self, theta: float) -> bool:
        return any(alpha <= theta <= beta for alpha, beta in self.intervals)

    def to_list(self) -> list[list[float]]:
        return [[alpha, beta] for alpha, beta in self.intervals]


@dataclass(frozen=True)
class LimitRatioResult:
    """Limit ratio with its above-set (|f2| >= |E|), the crossings and their residuals."""

    lc: float
    above_set: IntervalSet
    crossings: tuple[float, ...]
    method: str = "exact"
    residuals: tuple[float, ...] = field(default=())
    mahler: float | None = None

    @property
    def r(self) -> int:
        """Number of unimodular arcs on [0, 2*pi], the r of the Erdos-Turan bound."""
        return self.above_set.complement().arc_count()

    def to_dict(self) -> dict[str, Any]:
        return {
            "lc": self.lc,
            "intervals": self.above_set.to_list(),
            "crossings": list(self.crossings),
            "method": self.method,
            "mahler": self.mahler,
        }


def as_pair(source: PairSource) -> CurvePair:
    """Curve pair of a spec (palindromic b required) or the pair itself."""
    if isinstance(source, CurvePair):
        return source
    if not source.palindromic:
        raise InvalidSpecError(f"limit ratio needs palindromic b, got b={source.b}")
    return CurvePair.from_spec(source)


def find_crossings(d: ChebPoly, *, validate: bool = False) -> list[float]:
    """Angles theta in [0, pi] with d(cos theta) = 0, tangencies included once.

    Args:
        d: The squared difference in Chebyshev form.
        validate: Compare the tally with an exact Sturm count (degree <= 60).

    Raises:
        DegenerateEnvelopeError: If d vanishes identically.
        NumericConsistencyError: If validation or the residual check fails.
    """
    scale = d.norm
    if scale <= DEGENERATE_NORM:
        raise DegenerateEnvelopeError("|f2| and |E| coincide identically; use the finite oracle")
    if d.degree == 0:
        return []

    normalized = ChebPoly(tuple(c / scale for c in d.coeffs))
    slope = normalized.derivative()
    cells = max(MIN_CELLS, CELLS_PER_DEGREE * (d.degree + 1))
    roots = isolate_roots(
        lambda theta: normalized(np.cos(theta)),
        lambda theta: slope(np.cos(theta)),
        0.0,
        math.pi,
        cells,
        ZERO_TOLERANCE,
    )

    crossings: list[float] = []
    for root in roots:
        if root.residual >= CROSSING_RESIDUAL:
            raise NumericConsistencyError(f"crossing at {root.position!r} has residual {root.residual:.3g}")
        if crossings and root.position - crossings[-1] <= MERGE_DISTANCE:
            continue
        crossings.append(min(max(root.position, 0.0), math.pi))

    if validate and d.degree <= STURM_MAX_DEGREE:
        exact = sturm_root_count(d)
        if exact != len(crossings):
            raise NumericConsistencyError(f"found {len(crossings)} crossings, Sturm count is {exact}")

    logger.debug("degree %d difference has %d crossings", d.degree, len(crossings))
    return crossings


def sturm_root_count(d: ChebPoly) -> int:
    """Exact number of distinct real roots of d on [-1, 1] (Sturm sequence over the rationals)."""
    if d.degree == 0:
        return 0
    w = sympy.Symbol("w")
    expr = sum(sympy.Rational(c) * sympy.chebyshevt_poly(m, w) for m, c in enumerate(d.coeffs))
    return int(sympy.Poly(expr, w).count_roots(-1, 1))


def classify_intervals(d: Callable[[Any], Any], crossings: list[float]) -> IntervalSet:
    """Union of the pieces of [0, pi] between crossings on which d >= 0.

    Adjacent kept pieces merge, so tangencies without sign change leave no endpoint.
    """
    breakpoints = sorted({0.0, math.pi, *crossings})
    kept: list[tuple[float, float]] = []
    for a, b in zip(breakpoints, breakpoints[1:]):
        if b <= a:
            continue
        if float(d(0.5 * (a + b))) < 0:
            continue
        if kept and kept[-1][1] == a:
            kept[-1] = (kept[-1][0], b)
        else:
            kept.append((a, b))
    return IntervalSet(tuple(kept))


def limit_ratio_exact(source: PairSource) -> LimitRatioResult:
    """Limit ratio LC = measure{|f2| >= |E|} / pi on the half period.

    Raises:
        InvalidSpecError: For a spec with non-palindromic b.
        DegenerateEnvelopeError: If |f2| = |E| identically.
    """
    pair = as_pair(source)
    difference = pair.difference()
    cheb = to_chebyshev(difference)
    crossings = find_crossings(cheb)
    above = classify_intervals(difference, crossings)
    lc = min(max(above.measure / math.pi, 0.0), 1.0)
    residuals = tuple(abs(float(difference(theta))) / cheb.norm for theta in crossings)

    logger.debug("limit ratio of %s is %.16g over %d intervals", pair.label or "pair", lc, above.count)
    return LimitRatioResult(lc=lc, above_set=above, crossings=tuple(crossings), residuals=residuals)


def limit_ratio_riemann(source: PairSource, p: int, *, full_period: bool | None = None) -> float:
    """Riemann estimate s/p of the limit ratio from the indicator of |f2| >= |E|.

    Samples theta_j = 2*j*pi/p over the full period, or theta_j = j*pi/p, j = 1..p, over
    the half period. ``full_period`` defaults to True for a FamilySpec and False for a
    curve pair.
    """
    if p < 1:
        raise InvalidSpecError(f"number of points must be positive, got {p}")
    if full_period is None:
        full_period = isinstance(source, FamilySpec)
    pair = as_pair(source)
    step = (2.0 if full_period else 1.0) * math.pi / p
    theta = step * np.arange(1, p + 1, dtype=float)
    hits = int(np.count_nonzero(pair.above(theta)))
    logger.debug("riemann sampler: %d of %d points above", hits, p)
    return hits / p


def limit_ratio(source: PairSource, *, method: str = "exact", points: int = 1_000_000) -> LimitRatioResult:
    """Limit ratio of a spec or curve pair by the named method.

    The riemann result carries no intervals or crossings.
    """
    if method == "exact":
        return limit_ratio_exact(source)
    if method == "riemann":
        return LimitRatioResult(
            lc=limit_ratio_riemann(source, points), above_set=IntervalSet(), crossings=(), method="riemann"
        )
    raise InvalidSpecError(f"unknown method {method!r}; expected 'exact' or 'riemann'")


def mahler_limit(source: PairSource, result: LimitRatioResult | None = None) -> float:
    """Limit Mahler measure exp((1/pi) * integral over U of log((|f2| + sqrt(f2^2 - E^2)) / |E|)).

    U is the above-set; each of its intervals is split at the zeros of E, where the
    integrand has an integrable logarithmic singularity.

    Raises:
        DegenerateEnvelopeError: If |f2| = |E| identically.
    """
    pair = as_pair(source)
    if result is None:
        result = limit_ratio_exact(pair)
    envelope_zeros = _envelope_zeros(pair.envelope)

    def integrand(theta: float) -> float:
        f = abs(float(pair.f2(theta)))
        e = abs(float(pair.envelope(theta)))
        if f <= e:
            return 0.0
        return math.log(f + math.sqrt(f * f - e * e)) - math.log(max(e, TINY))

    total = 0.0
    for alpha, beta in result.above_set.intervals:
        cuts = [alpha, *[z for z in envelope_zeros if alpha < z < beta], beta]
        for a, b in zip(cuts, cuts[1:]):
            value, error = quad(integrand, a, b, epsabs=QUAD_ABS_TOLERANCE, epsrel=QUAD_REL_TOLERANCE, limit=QUAD_LIMIT)
            logger.debug("quadrature on [%.12g, %.12g] = %.16g (error %.2g)", a, b, value, error)
            total += value
    return math.exp(total / math.pi)


# -- Helpers --


def _envelope_zeros(envelope: TrigSeries) -> list[float]:
    if not envelope.cosines.keys() - {0} and not envelope.sines:
        return []
    scale = max([abs(c) for c in envelope.cosines.values()] + [abs(s) for s in envelope.sines.values()])
    cells = max(MIN_CELLS, int(CELLS_PER_DEGREE * (envelope.max_frequency + 1)))
    roots = isolate_roots(envelope, envelope.derivative(), 0.0, math.pi, cells, ZERO_TOLERANCE * scale)
    return [root.position for root in roots]

"""Named families: bivariate P/Q/R/S curve pairs, the H and T sequences and their analytic bounds."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Any, Iterable, Mapping, Union

from mpmath import MPContext

from .exceptions import DegenerateEnvelopeError, IntegralityError, InvalidSpecError
from .family import FamilySpec, IntPolynomial
from .oracle import mahler_univariate
from .solver import CurvePair, limit_ratio_exact
from .trig import TrigSeries

logger = logging.getLogger("uniratio")

BIVARIATE_NAMES = ("P", "Q", "R", "S")
FAMILY_NAMES = BIVARIATE_NAMES + ("H", "T")

# x^4 - x^3 - x^2 - x + 1, the minimal polynomial of the smallest degree-4 Salem number.
SALEM_QUARTIC = (1, -1, -1, -1, 1)
SALEM_POWER_SUM_SEEDS = (4, 1, 3, 7)
SALEM_DPS = 40
INTEGRALITY_TOLERANCE = 1e-6
POSITIVE_LC = 1e-12

FamilySource = Union[FamilySpec, CurvePair]


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of a named family: a, b (and epsilon) for P/Q/R/S, m for H and T."""

    name: str
    a: int | None = None
    b: int | None = None
    epsilon: int | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        if self.name not in FAMILY_NAMES:
            raise InvalidSpecError(f"unknown family {self.name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        if self.name in BIVARIATE_NAMES:
            for field_name in ("a", "b"):
                value = getattr(self, field_name)
                if not _is_int(value) or value < 1:
                    raise InvalidSpecError(f"family {self.name} needs a positive integer {field_name}, got {value!r}")
            if self.name == "S" and self.epsilon not in (1, -1):
                raise InvalidSpecError(f"family S needs epsilon of +1 or -1, got {self.epsilon!r}")
        else:
            minimum = 2 if self.name == "H" else 1
            if not _is_int(self.m) or self.m < minimum:
                raise InvalidSpecError(f"family {self.name} needs an integer m >= {minimum}, got {self.m!r}")

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> FamilyParams:
        """Build from family JSON, e.g. ``{"family": "S", "a": 1, "b": 3, "epsilon": 1}``."""
        if "family" not in raw:
            raise InvalidSpecError("family JSON is missing the 'family' field")
        unknown = set(raw) - {"family", "a", "b", "epsilon", "m"}
        if unknown:
            raise InvalidSpecError(f"unexpected family field(s): {', '.join(sorted(unknown))}")
        return cls(
            name=str(raw["family"]).upper(),
            a=raw.get("a"),
            b=raw.get("b"),
            epsilon=raw.get("epsilon"),
            m=raw.get("m"),
        )

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"family": self.name}
        _set(data, "a", self.a)
        _set(data, "b", self.b)
        _set(data, "epsilon", self.epsilon)
        _set(data, "m", self.m)
        return data

    def __str__(self) -> str:
        if self.name == "S":
            return f"S({self.a}, {self.b},{'+' if self.epsilon == 1 else '-'})"
        if self.name in BIVARIATE_NAMES:
            return f"{self.name}({self.a}, {self.b})"
        return f"{self.name}({self.m})"


def table1_pair(params: FamilyParams) -> CurvePair:
    """Curve pair (f2, E) of a bivariate family as series in theta = pi*u on [0, pi].

    P: (sin(b theta/2), 2 sin(a theta/2)); Q: (cos(b theta/2), 2 cos(a theta/2));
    R: (sin(b theta/2), 2 cos(a theta/2)); S: (cos((a+b) theta/2) + eps cos((b-a) theta/2), 1).

    Raises:
        InvalidSpecError: For H and T, which are sequences with their own specs.
    """
    if params.name not in BIVARIATE_NAMES:
        raise InvalidSpecError(f"family {params.name} has no curve pair; use its family spec")
    a, b = int(params.a or 0), int(params.b or 0)

    if params.name == "P":
        f2, envelope = TrigSeries(sines={b: 1.0}), TrigSeries(sines={a: 2.0})
    elif params.name == "Q":
        f2, envelope = TrigSeries({b: 1.0}), TrigSeries({a: 2.0})
    elif params.name == "R":
        f2, envelope = TrigSeries(sines={b: 1.0}), TrigSeries({a: 2.0})
    else:
        epsilon = float(params.epsilon or 1)
        f2 = TrigSeries({a + b: 1.0}) + TrigSeries({abs(b - a): epsilon})
        envelope = TrigSeries.constant(1.0)
    return CurvePair(f2=f2, envelope=envelope, label=str(params))


def specialize_bivariate(params: FamilyParams, n: int) -> IntPolynomial:
    """Expand the bivariate polynomial of a P/Q/R/S family at y = x^n.

    Raises:
        InvalidSpecError: For H or T, or n < 1.
    """
    if params.name not in BIVARIATE_NAMES:
        raise InvalidSpecError(f"family {params.name} is not bivariate")
    if n < 1:
        raise InvalidSpecError(f"substitution power must be positive, got {n}")
    a, b = int(params.a or 0), int(params.b or 0)

    if params.name == "S":
        epsilon = int(params.epsilon or 1)
        middle = (_monomial(a) + _monomial(0, epsilon)) * (_monomial(b) + _monomial(0, epsilon))
        return _monomial(0) + middle.shifted(n) + _monomial(a + b + 2 * n)

    shift = max(a - b, 0)
    top = shift + b - a + 2 * n
    if params.name == "P":
        low, middle = _phi(a), _phi(b)
        high = low
    else:
        low = _monomial(0) + _monomial(a)
        middle = _monomial(0) + _monomial(b, 1 if params.name == "Q" else -1)
        high = low if params.name == "Q" else -low
    return low.shifted(shift) + middle.shifted(shift + n) + high.shifted(top)


def family_source(params: FamilyParams) -> FamilySource:
    """What the solver consumes for a family: a curve pair for P/Q/R/S, a spec for H and T."""
    if params.name == "H":
        return h_family_spec(int(params.m or 0))
    if params.name == "T":
        return t_family_spec(int(params.m or 0))
    return table1_pair(params)


def h_family_spec(m: int) -> FamilySpec:
    """H family with l = m - 1: a = (1), b all ones of length m."""
    if m < 2:
        raise InvalidSpecError(f"H family needs m >= 2, got {m}")
    return FamilySpec(k=0, l=m - 1, a=(1,), b=(1,) * m)


def hbounds(m: int) -> tuple[float, float]:
    """Analytic bracket (lower, upper) around the limit ratio of the H family."""
    if m < 2:
        raise InvalidSpecError(f"H bounds need m >= 2, got {m}")
    factor = math.sin((m - 1) * math.pi / (2 * m)) / math.sin(math.pi / (2 * m))
    lower = 2.0 / (math.pi * (2 * m + 1)) * factor
    upper = 2.0 / (6 * m - math.pi) * factor
    return lower, upper


def salem_power_coeffs(m: int) -> tuple[int, int]:
    """Middle coefficients (b1, b2) of the minimal polynomial of gamma^m.

    gamma is the Salem root of x^4 - x^3 - x^2 - x + 1. b1 is minus the m-th power sum
    of its roots (Newton recurrence); b2 is their second elementary symmetric function,
    computed from high-precision roots and checked against (p_m^2 - p_{2m}) / 2.

    Raises:
        InvalidSpecError: If m < 1.
        IntegralityError: If the numeric value is not integral or disagrees with the exact one.
    """
    if m < 1:
        raise InvalidSpecError(f"Salem power needs m >= 1, got {m}")

    sums = _salem_power_sums(2 * m)
    b1 = -sums[m]
    exact_b2 = (sums[m] ** 2 - sums[2 * m]) // 2

    # Private context: mp.dps is process-wide and rows run on worker threads.
    ctx = MPContext()
    ctx.dps = SALEM_DPS + m
    try:
        roots = ctx.polyroots(SALEM_QUARTIC, maxsteps=200, extraprec=2 * SALEM_DPS)
    except ctx.NoConvergence as exc:
        raise IntegralityError(f"Salem conjugates for m={m} did not converge: {exc}") from exc
    powers = [root**m for root in roots]
    numeric = sum(powers[i] * powers[j] for i in range(4) for j in range(i + 1, 4))
    rounded = int(ctx.nint(numeric.real))
    drift = abs(numeric - rounded)
    if drift > ctx.mpf(INTEGRALITY_TOLERANCE):
        raise IntegralityError(f"b2 for m={m} is not integral (distance {float(drift):.3g})")
    if rounded != exact_b2:
        raise IntegralityError(f"b2 for m={m}: numeric {rounded} != exact {exact_b2}")

    logger.debug("salem power m=%d: b1=%d b2=%d", m, b1, exact_b2)
    return b1, exact_b2


def t_family_spec(m: int) -> FamilySpec:
    """T family: a = (2), b = (1, b1, b2, b1, 1) from the Salem power gamma^m."""
    b1, b2 = salem_power_coeffs(m)
    return FamilySpec(k=0, l=4, a=(2,), b=(1, b1, b2, b1, 1))


def t_family_crossings(m: int) -> tuple[float, float]:
    """(cos alpha_m, cos beta_m): the roots of E_m = 1 and E_m = -1 that can lie in [-1, 1].

    Written as (4 b2 - 12) / (4 (-b1 + sqrt(b1^2 - 4 b2 + 12))), and likewise with 4,
    which avoids the cancellation in (-b1 - sqrt(...)) / 4 once b1 is large.
    """
    b1, b2 = salem_power_coeffs(m)
    disc_alpha = b1 * b1 - 4 * b2 + 12
    disc_beta = b1 * b1 - 4 * b2 + 4
    cos_alpha = (4 * b2 - 12) / (4 * (-b1 + math.sqrt(disc_alpha)))
    cos_beta = (4 * b2 - 4) / (4 * (-b1 + math.sqrt(disc_beta)))
    return cos_alpha, cos_beta


def t_family_gap(m: int) -> float:
    """cos beta_m - cos alpha_m = 2 / (sqrt(b1^2 - 4 b2 + 12) + sqrt(b1^2 - 4 b2 + 4))."""
    b1, b2 = salem_power_coeffs(m)
    return 2.0 / (math.sqrt(b1 * b1 - 4 * b2 + 12) + math.sqrt(b1 * b1 - 4 * b2 + 4))


def boyd_lawton_trend(params: FamilyParams, n_list: Iterable[int]) -> list[tuple[int, float]]:
    """Mahler measures M(P(x, x^n)) of the specialisations, which tend to the bivariate limit."""
    return [(n, mahler_univariate(specialize_bivariate(params, n))) for n in n_list]


@dataclass(frozen=True)
class GapScan:
    """Smallest positive limit ratios among bounded-coefficient specs."""

    entries: tuple[tuple[float, FamilySpec], ...]
    scanned: int
    skipped: int


def gap_scan(bound: int, k_max: int, l_max: int, top: int = 10) -> GapScan:
    """Enumerate palindromic specs with |coefficients| <= bound and keep the ``top`` smallest positive lc.

    Specs whose envelope coincides with the right-side curve are skipped and counted.
    """
    if bound < 1 or k_max < 0 or l_max < 0 or top < 1:
        raise InvalidSpecError("gap scan needs bound >= 1, k_max >= 0, l_max >= 0 and top >= 1")

    found: list[tuple[float, FamilySpec]] = []
    scanned = skipped = 0
    for k in range(k_max + 1):
        for a in _coefficient_vectors(k + 1, bound, nonzero_last=k > 0):
            for l in range(l_max + 1):
                for b in _palindromes(l + 1, bound):
                    spec = FamilySpec(k=k, l=l, a=a, b=b)
                    scanned += 1
                    try:
                        lc = limit_ratio_exact(spec).lc
                    except DegenerateEnvelopeError:
                        skipped += 1
                        continue
                    if lc > POSITIVE_LC:
                        found.append((lc, spec))

    found.sort(key=lambda entry: (entry[0], str(entry[1])))
    logger.debug("gap scan: %d specs, %d degenerate, %d positive", scanned, skipped, len(found))
    return GapScan(entries=tuple(found[:top]), scanned=scanned, skipped=skipped)


# -- Helpers --


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _set(data: dict[str, Any], key: str, value: Any) -> None:
    if value is not None:
        data[key] = value


def _monomial(power: int, coeff: int = 1) -> IntPolynomial:
    return IntPolynomial((0,) * power + (coeff,))


def _phi(size: int) -> IntPolynomial:
    """(x^size - 1) / (x - 1)."""
    return IntPolynomial((1,) * size)


def _salem_power_sums(count: int) -> list[int]:
    sums = list(SALEM_POWER_SUM_SEEDS)
    while len(sums) <= count:
        sums.append(sums[-1] + sums[-2] + sums[-3] - sums[-4])
    return sums


def _coefficient_vectors(length: int, bound: int, *, nonzero_last: bool) -> Iterable[tuple[int, ...]]:
    values = range(-bound, bound + 1)
    for head in product(values, repeat=length - 1):
        for last in values:
            if nonzero_last and last == 0:
                continue
            yield (*head, last)


def _palindromes(length: int, bound: int) -> Iterable[tuple[int, ...]]:
    values = range(-bound, bound + 1)
    half = (length + 1) // 2
    for first in (v for v in values if v != 0):
        for rest in product(values, repeat=half - 1):
            left = (first, *rest)
            yield left + left[: length - half][::-1]

"""Trigonometric series algebra: envelope, right-side curve and the Chebyshev reduction.

Frequencies are stored doubled (key ``2*nu`` for cos(nu*t)) so the half-integer
frequencies of an odd-l envelope are exact integer keys.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidSpecError
from .family import FamilySpec

logger = logging.getLogger("uniratio")

SINGULARITY_TOLERANCE = 1e-12

FloatOrArray = Union[float, NDArray[np.float64]]


@dataclass(frozen=True)
class TrigSeries:
    """Finite real series sum c*cos((v/2)t) + sum s*sin((v/2)t), keyed by doubled frequency v.

    Specs only ever produce cosine terms; sine terms appear in the curve pairs
    of the bivariate families and cancel out of their squared difference.
    """

    cosines: Mapping[int, float] = field(default_factory=dict)
    sines: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cosines = {int(v): float(c) for v, c in self.cosines.items() if c != 0.0}
        sines = {int(v): float(s) for v, s in self.sines.items() if s != 0.0 and v != 0}
        if any(v < 0 for v in cosines) or any(v < 0 for v in sines):
            raise InvalidSpecError("doubled frequencies must be nonnegative")
        object.__setattr__(self, "cosines", dict(sorted(cosines.items())))
        object.__setattr__(self, "sines", dict(sorted(sines.items())))

    @classmethod
    def constant(cls, value: float) -> TrigSeries:
        return cls(cosines={0: value})

    @property
    def is_zero(self) -> bool:
        return not self.cosines and not self.sines

    @property
    def integer_frequencies(self) -> bool:
        """True when every frequency is an integer (every doubled key even)."""
        return all(v % 2 == 0 for v in self.cosines) and all(v % 2 == 0 for v in self.sines)

    @property
    def max_frequency(self) -> float:
        keys = list(self.cosines) + list(self.sines)
        return max(keys) / 2 if keys else 0.0

    def __call__(self, t: ArrayLike) -> FloatOrArray:
        t_arr = np.asarray(t, dtype=float)
        value = np.zeros_like(t_arr)
        for v, c in self.cosines.items():
            value = value + c * np.cos(0.5 * v * t_arr)
        for v, s in self.sines.items():
            value = value + s * np.sin(0.5 * v * t_arr)
        return float(value) if value.ndim == 0 else value

    def __add__(self, other: TrigSeries) -> TrigSeries:
        return TrigSeries(_merge(self.cosines, other.cosines, 1.0), _merge(self.sines, other.sines, 1.0))

    def __sub__(self, other: TrigSeries) -> TrigSeries:
        return TrigSeries(_merge(self.cosines, other.cosines, -1.0), _merge(self.sines, other.sines, -1.0))

    def scaled(self, factor: float) -> TrigSeries:
        return TrigSeries(
            {v: factor * c for v, c in self.cosines.items()},
            {v: factor * s for v, s in self.sines.items()},
        )

    def __mul__(self, other: TrigSeries) -> TrigSeries:
        """Product expanded with the product-to-sum identities."""
        cosines: dict[int, float] = {}
        sines: dict[int, float] = {}
        for v1, c1 in self.cosines.items():
            for v2, c2 in other.cosines.items():
                _accumulate_cos(cosines, v1 - v2, 0.5 * c1 * c2)
                _accumulate_cos(cosines, v1 + v2, 0.5 * c1 * c2)
            for v2, s2 in other.sines.items():
                # cos A sin B = (sin(A+B) - sin(A-B)) / 2
                _accumulate_sin(sines, v1 + v2, 0.5 * c1 * s2)
                _accumulate_sin(sines, v1 - v2, -0.5 * c1 * s2)
        for v1, s1 in self.sines.items():
            for v2, c2 in other.cosines.items():
                _accumulate_sin(sines, v1 + v2, 0.5 * s1 * c2)
                _accumulate_sin(sines, v1 - v2, 0.5 * s1 * c2)
            for v2, s2 in other.sines.items():
                _accumulate_cos(cosines, v1 - v2, 0.5 * s1 * s2)
                _accumulate_cos(cosines, v1 + v2, -0.5 * s1 * s2)
        return TrigSeries(cosines, sines)

    def derivative(self) -> TrigSeries:
        """Termwise d/dt."""
        cosines = {v: 0.5 * v * s for v, s in self.sines.items()}
        sines = {v: -0.5 * v * c for v, c in self.cosines.items()}
        return TrigSeries(cosines, sines)

    def to_dict(self) -> dict[str, dict[str, float]]:
        return {
            "cos": {_format_frequency(v): c for v, c in self.cosines.items()},
            "sin": {_format_frequency(v): s for v, s in self.sines.items()},
        }


@dataclass(frozen=True)
class ChebPoly:
    """Real polynomial d(w) on [-1, 1], stored by its Chebyshev coefficients.

    ``coeffs[m]`` multiplies T_m(w), so d(cos t) = sum coeffs[m] cos(m t).
    """

    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def norm(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def as_numpy(self) -> Chebyshev:
        return Chebyshev(np.asarray(self.coeffs, dtype=float))

    def power_coefficients(self) -> tuple[float, ...]:
        """Coefficients in the monomial basis, ascending powers of w."""
        poly = self.as_numpy().convert(kind=np.polynomial.Polynomial)
        return tuple(float(c) for c in poly.coef)

    def derivative(self) -> ChebPoly:
        if self.degree < 1:
            return ChebPoly((0.0,))
        return ChebPoly(tuple(float(c) for c in self.as_numpy().deriv().coef))

    def __call__(self, w: ArrayLike) -> FloatOrArray:
        value = np.polynomial.chebyshev.chebval(np.asarray(w, dtype=float), self.coeffs)
        return float(value) if np.ndim(value) == 0 else value


def envelope_series(spec: FamilySpec) -> TrigSeries:
    """Envelope E(t) of cos((n + l/2)t) E(t).

    l even: sum_{j<l/2} 2 b_j cos((l/2 - j)t) + b_{l/2}; l odd: sum_{j<=(l-1)/2} 2 b_j cos((l/2 - j)t).

    Raises:
        InvalidSpecError: If b is not palindromic.
    """
    if not spec.palindromic:
        raise InvalidSpecError(f"envelope needs palindromic b, got b={spec.b}")

    cosines: dict[int, float] = {}
    for j in range((spec.l + 1) // 2):
        cosines[spec.l - 2 * j] = 2.0 * spec.b[j]
    if spec.l % 2 == 0:
        cosines[0] = float(spec.b[spec.l // 2])
    return TrigSeries(cosines)


def f2_series(spec: FamilySpec) -> TrigSeries:
    """Right-side curve f2(t) = -a_0/2 - sum_{j>=1} a_j cos(jt)."""
    cosines = {0: -0.5 * spec.a[0]}
    for j in range(1, spec.k + 1):
        cosines[2 * j] = -float(spec.a[j])
    return TrigSeries(cosines)


def closed_form_envelope_eval(l: int, t: ArrayLike) -> FloatOrArray:
    """Closed form sin((l+1)t/2) / sin(t/2) of the all-ones envelope.

    At t = 2*pi*j the removable singularity takes its limit (-1)^(l*j) (l + 1),
    which is l + 1 at t = 0.
    """
    t_arr = np.asarray(t, dtype=float)
    half = np.sin(0.5 * t_arr)
    singular = np.abs(half) < SINGULARITY_TOLERANCE
    safe = np.where(singular, 1.0, half)
    value = np.sin(0.5 * (l + 1) * t_arr) / safe
    turns = np.rint(t_arr / (2 * np.pi)).astype(np.int64)
    limit = np.where((l * turns) % 2 == 0, l + 1.0, -(l + 1.0))
    value = np.where(singular, limit, value)
    return float(value) if value.ndim == 0 else value


def squared_difference(f2: TrigSeries, envelope: TrigSeries) -> TrigSeries:
    """D = f2^2 - E^2; D >= 0 exactly where |f2| >= |E|."""
    difference = f2 * f2 - envelope * envelope
    logger.debug(
        "squared difference has %d cosine and %d sine terms", len(difference.cosines), len(difference.sines)
    )
    return difference


def to_chebyshev(series: TrigSeries) -> ChebPoly:
    """Rewrite an integer-frequency cosine series as a polynomial in w = cos t.

    Raises:
        InvalidSpecError: If a half-integer frequency or a sine term is present.
    """
    if series.sines or not series.integer_frequencies:
        raise InvalidSpecError("Chebyshev form needs integer frequencies and cosine terms only")
    if series.is_zero:
        return ChebPoly((0.0,))
    degree = max(series.cosines) // 2
    coeffs = [0.0] * (degree + 1)
    for v, c in series.cosines.items():
        coeffs[v // 2] = c
    return ChebPoly(tuple(coeffs))


def unimodular_form(spec: FamilySpec, n: int) -> TrigSeries:
    """F(t) = cos((n + l/2)t) E(t) - f2(t); its zeros in [0, 2*pi) are the unimodular roots of P_{2n+2l}."""
    carrier = TrigSeries({2 * n + spec.l: 1.0})
    return carrier * envelope_series(spec) - f2_series(spec)


# -- Helpers --


def _merge(left: Mapping[int, float], right: Mapping[int, float], sign: float) -> dict[int, float]:
    merged = dict(left)
    for v, c in right.items():
        merged[v] = merged.get(v, 0.0) + sign * c
    return merged


def _accumulate_cos(terms: dict[int, float], v: int, c: float) -> None:
    terms[abs(v)] = terms.get(abs(v), 0.0) + c


def _accumulate_sin(terms: dict[int, float], v: int, s: float) -> None:
    if v == 0:
        return
    if v < 0:
        v, s = -v, -s
    terms[v] = terms.get(v, 0.0) + s


def _format_frequency(v: int) -> str:
    return str(v // 2) if v % 2 == 0 else f"{v}/2"

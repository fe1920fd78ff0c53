"""Finite-n ground truth: root censuses, C(P), the Erdos-Turan bound and univariate Mahler measure."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

import numpy as np
import sympy

from .exceptions import ClassificationUnstableError, GridInstabilityError, InvalidSpecError
from .family import FamilySpec, IntPolynomial, check_index, expand_polynomial
from .roots import isolate_roots
from .solver import limit_ratio_exact
from .trig import unimodular_form

logger = logging.getLogger("uniratio")

DEFAULT_TOLERANCE = 1e-7
# Moduli within this factor of the tolerance are too close to call.
AMBIGUITY_FACTOR = 10.0
CELLS_PER_ROOT = 16
ZERO_TOLERANCE = 1e-12
MERGE_DISTANCE = 1e-10
TWO_PI = 2.0 * math.pi

Mapper = Callable[[Callable[[int], Any], Iterable[int]], Iterable[Any]]


@dataclass(frozen=True)
class RootCensus:
    """Root counts I (inside), U (on the circle) and E (outside) of a polynomial of degree d."""

    inside: int
    on_circle: int
    outside: int
    degree: int
    tolerance: float
    method: str = "modulus"

    @property
    def nonunimodular(self) -> int:
        return self.inside + self.outside

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "inside": self.inside,
            "on_circle": self.on_circle,
            "outside": self.outside,
            "method": self.method,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    degree: int
    c: float | None
    abs_err: float | None
    et_bound: float | None
    status: str = "ok"

    @property
    def within_bound(self) -> bool:
        if self.abs_err is None or self.et_bound is None:
            return True
        return self.abs_err <= self.et_bound


@dataclass(frozen=True)
class ConvergenceReport:
    """C(P_{2n+2l}) against the limit ratio for a list of n, with the Erdos-Turan bound per row.

    ``lc``, ``r`` and the bound are None in oracle-only mode (non-palindromic b, no known limit).
    Rows whose modulus census is unstable carry status "unstable" and no C.
    """

    rows: tuple[ConvergenceRow, ...]
    lc: float | None
    r: int | None
    d_constant: float

    @property
    def within_bound(self) -> bool:
        return all(row.within_bound for row in self.rows)

    @property
    def unstable(self) -> tuple[int, ...]:
        """Values of n whose census could not be classified."""
        return tuple(row.n for row in self.rows if row.status == "unstable")

    def to_dict(self) -> dict[str, Any]:
        return {
            "lc": self.lc,
            "r": self.r,
            "D": self.d_constant,
            "rows": [
                {
                    "n": row.n,
                    "degree": row.degree,
                    "C": row.c,
                    "abs_err": row.abs_err,
                    "et_bound": row.et_bound,
                    "status": row.status,
                }
                for row in self.rows
            ],
        }


def count_roots_modulus(poly: IntPolynomial, tolerance: float = DEFAULT_TOLERANCE) -> RootCensus:
    """Classify the numeric roots of ``poly`` by modulus.

    Powers of x are divided out first; the census is of the remaining polynomial.
    The polynomial is split into square-free factors (sympy) and the roots of each
    come from the eigenvalues of its balanced companion matrix.

    Args:
        poly: Polynomial to classify.
        tolerance: Half-width of the band around |z| = 1 counted as on the circle.

    Returns:
        The census, with ``degree`` the degree of the normalised polynomial.

    Raises:
        InvalidSpecError: If tolerance is outside (0, 0.1).
        ClassificationUnstableError: If some modulus sits within a factor 10 of the band
            edge, or a reciprocal input yields I != E.
    """
    if not 0 < tolerance < 0.1:
        raise InvalidSpecError(f"tolerance must lie in (0, 0.1), got {tolerance}")

    normalized, _ = poly.normalized()
    degree = normalized.degree
    if degree == 0:
        return RootCensus(0, 0, 0, 0, tolerance)

    # Repeated roots would split by about sqrt(eps) into the ambiguity band.
    inside = outside = 0
    moduli_seen: list[float] = []
    ambiguous: list[float] = []
    for factor, multiplicity in _square_free_factors(normalized):
        moduli = np.abs(_numeric_roots(factor))
        deviation = np.abs(moduli - 1.0)
        near_edge = (deviation > tolerance / AMBIGUITY_FACTOR) & (deviation < tolerance * AMBIGUITY_FACTOR)
        ambiguous.extend(float(m) for m in moduli[near_edge])
        moduli_seen.extend(float(m) for m in moduli)
        inside += multiplicity * int(np.count_nonzero(moduli < 1.0 - tolerance))
        outside += multiplicity * int(np.count_nonzero(moduli > 1.0 + tolerance))
    if ambiguous:
        raise ClassificationUnstableError(
            f"{len(ambiguous)} root(s) too close to the tolerance band {tolerance:g}; "
            "use the sign-change count or a larger n",
            moduli=tuple(ambiguous),
        )

    on_circle = degree - inside - outside
    if normalized.reciprocal and inside != outside:
        raise ClassificationUnstableError(
            f"reciprocal polynomial classified with I={inside} != E={outside}",
            moduli=tuple(moduli_seen),
        )

    logger.debug("modulus census of degree %d: I=%d U=%d E=%d", degree, inside, on_circle, outside)
    return RootCensus(inside, on_circle, outside, degree, tolerance)


def count_unimodular_signchange(
    spec: FamilySpec,
    n: int,
    *,
    cross_check: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> int:
    """Count the unimodular roots of P_{2n+2l} as the zeros of F(t) = cos((n + l/2)t) E(t) - f2(t).

    Zeros are bracketed on a grid of 16(n + l) cells over one period and refined
    by bisection; touching zeros count twice, matching the root multiplicity.

    Args:
        spec: Spec with palindromic b.
        n: Sequence index; 2n > k and n + l >= k.
        cross_check: Also run the modulus census and require the same U.
        tolerance: Band used by the cross-check census.

    Raises:
        InvalidSpecError: If b is not palindromic or n is out of range.
        GridInstabilityError: If the cross-check disagrees.
    """
    if not spec.palindromic:
        raise InvalidSpecError(f"sign-change count needs palindromic b, got b={spec.b}")
    check_index(spec, n)

    form = unimodular_form(spec, n)
    scale = max(abs(c) for c in form.cosines.values())
    cells = CELLS_PER_ROOT * (n + spec.l)
    # Shift the window half a cell so t = 0 is interior.
    offset = 0.5 * TWO_PI / cells
    roots = isolate_roots(form, form.derivative(), -offset, TWO_PI - offset, cells, ZERO_TOLERANCE * scale)

    unique: list[tuple[float, int]] = []
    for root in roots:
        angle = root.position % TWO_PI
        if any(_circular_distance(angle, seen) <= MERGE_DISTANCE for seen, _ in unique):
            continue
        unique.append((angle, root.multiplicity))
    count = sum(multiplicity for _, multiplicity in unique)

    if cross_check:
        census = count_roots_modulus(expand_polynomial(spec, n), tolerance)
        if census.on_circle != count:
            raise GridInstabilityError(signchange=count, modulus=census.on_circle)

    logger.debug("sign-change count for %s at n=%d: U=%d", spec, n, count)
    return count


def c_ratio(spec: FamilySpec, n: int, *, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """C = (d - U) / d for P_{2n+2l}, d = 2n + 2l.

    Palindromic specs use the sign-change count, others the modulus census.
    """
    degree = 2 * n + 2 * spec.l
    if spec.palindromic:
        unimodular = count_unimodular_signchange(spec, n)
    else:
        unimodular = count_roots_modulus(expand_polynomial(spec, n), tolerance).on_circle
    return (degree - unimodular) / degree


def c_ratio_polynomial(poly: IntPolynomial, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """C for an arbitrary polynomial; zeros at x = 0 count as nonunimodular."""
    if poly.degree == 0:
        raise InvalidSpecError("C is undefined for a constant polynomial")
    census = count_roots_modulus(poly, tolerance)
    return (poly.degree - census.on_circle) / poly.degree


def erdos_turan_constant(spec: FamilySpec) -> float:
    """D = sqrt(log((2 sum|b_j| + |a_0| + 2 sum_{j>=1} |a_j|) / sqrt(|b_0 b_l|)))."""
    total = 2 * sum(abs(v) for v in spec.b) + abs(spec.a[0]) + 2 * sum(abs(v) for v in spec.a[1:])
    return math.sqrt(math.log(total / math.sqrt(abs(spec.b[0] * spec.b[-1]))))


def erdos_turan_bound(spec: FamilySpec, n: int, r: int) -> float:
    """16 r D / sqrt(2n + 2l): bound on |C(P_{2n+2l}) - LC| over r arcs."""
    return 16.0 * r * erdos_turan_constant(spec) / math.sqrt(2 * n + 2 * spec.l)


def erdos_turan_check(poly: IntPolynomial, alpha: float, beta: float) -> tuple[float, float]:
    """Angular discrepancy of the roots of ``poly`` on the sector [alpha, beta] and its Erdos-Turan bound.

    Returns:
        ``(|N/d - (beta - alpha)/(2 pi)|, 16/sqrt(d) * sqrt(log(sum|a_i| / sqrt|a_0 a_d|)))``
        for the x-power-normalised polynomial.
    """
    if not 0 <= alpha <= beta <= TWO_PI:
        raise InvalidSpecError(f"need 0 <= alpha <= beta <= 2*pi, got [{alpha}, {beta}]")
    normalized, _ = poly.normalized()
    degree = normalized.degree
    if degree == 0:
        raise InvalidSpecError("angular discrepancy needs a nonconstant polynomial")

    angles = np.mod(np.angle(_numeric_roots(normalized)), TWO_PI)
    count = int(np.count_nonzero((angles >= alpha) & (angles <= beta)))
    discrepancy = abs(count / degree - (beta - alpha) / TWO_PI)

    height = sum(abs(c) for c in normalized.coeffs) / math.sqrt(abs(normalized.coeffs[0] * normalized.leading))
    bound = 16.0 / math.sqrt(degree) * math.sqrt(math.log(height))
    return discrepancy, bound


def convergence_report(
    spec: FamilySpec,
    n_list: Sequence[int],
    lc: float | None = None,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    mapper: Mapper = map,
) -> ConvergenceReport:
    """Tabulate C, |C - LC| and the Erdos-Turan bound for each n.

    Args:
        spec: Family spec.
        n_list: Values of n, reported in this order.
        lc: Known limit ratio. Palindromic specs default to the exact solver value;
            others without it are tabulated in oracle-only mode.
        tolerance: Modulus census band.
        mapper: ``map``-like callable used to fan out the per-n censuses.
    """
    if not n_list:
        raise InvalidSpecError("n list must not be empty")

    r: int | None = None
    if spec.palindromic:
        result = limit_ratio_exact(spec)
        r = result.r
        if lc is None:
            lc = result.lc

    c_values = list(mapper(lambda n: _flagged_c_ratio(spec, n, tolerance), n_list))
    rows = []
    for n, c in zip(n_list, c_values):
        abs_err = abs(c - lc) if lc is not None and c is not None else None
        bound = erdos_turan_bound(spec, n, r) if r is not None else None
        status = "ok" if c is not None else "unstable"
        rows.append(ConvergenceRow(n=n, degree=2 * n + 2 * spec.l, c=c, abs_err=abs_err, et_bound=bound, status=status))

    report = ConvergenceReport(rows=tuple(rows), lc=lc, r=r, d_constant=erdos_turan_constant(spec))
    logger.debug("convergence report for %s: %d rows, within bound=%s", spec, len(rows), report.within_bound)
    return report


def mahler_univariate(poly: IntPolynomial) -> float:
    """M(P) = |lead| * prod max(1, |root|)."""
    normalized, _ = poly.normalized()
    if normalized.degree == 0:
        return float(abs(normalized.leading))
    moduli = np.abs(_numeric_roots(normalized))
    return float(abs(normalized.leading) * np.prod(np.maximum(moduli, 1.0)))


def census_kind(census: RootCensus) -> str:
    """Shape of a census: "cyclotomic" (all roots unimodular), "pisot", "salem" or "other"."""
    d = census.degree
    if d > 0 and census.on_circle == d:
        return "cyclotomic"
    if census.outside == 1 and census.inside == d - 1:
        return "pisot"
    if census.outside == 1 and census.inside == 1 and d >= 4 and census.on_circle == d - 2:
        return "salem"
    return "other"


# -- Helpers --


def _flagged_c_ratio(spec: FamilySpec, n: int, tolerance: float) -> float | None:
    try:
        return c_ratio(spec, n, tolerance=tolerance)
    except ClassificationUnstableError as exc:
        logger.warning("census at n=%d left unclassified: %s", n, exc.message)
        return None


def _numeric_roots(poly: IntPolynomial) -> Any:
    return np.roots(np.asarray(poly.coeffs[::-1], dtype=float))


def _square_free_factors(poly: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(list(poly.coeffs[::-1]), x).sqf_list()
    return [(IntPolynomial.from_coeffs(factor.all_coeffs()[::-1]), multiplicity) for factor, multiplicity in factors]


def _circular_distance(x: float, y: float) -> float:
    gap = abs(x - y) % TWO_PI
    return min(gap, TWO_PI - gap)

"""Family specs P_{2n+2l} and their expansion to integer polynomials."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .exceptions import InvalidSpecError

logger = logging.getLogger("uniratio")

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class FamilySpec:
    """Integer data (k, l, a, b) of the sequence

        P_{2n+2l}(x) = x^{n+l} (sum_j b_j (x^{n+j} + x^{-(n+j)}) + a_0 + sum_{j>=1} a_j (x^j + x^{-j})).

    Build instances with :func:`validate_spec`; one spec serves every n.
    """

    k: int
    l: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def palindromic(self) -> bool:
        """True when b_j = b_{l-j} for all j."""
        return self.b == self.b[::-1]

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "l": self.l, "a": list(self.a), "b": list(self.b)}

    def __str__(self) -> str:
        return f"(k={self.k}, l={self.l}, a={self.a}, b={self.b})"


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, ``coeffs[i]`` is the coefficient of x^i."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] == 0:
            raise InvalidSpecError("leading coefficient must be nonzero")
        if any(abs(c) > INT64_MAX for c in self.coeffs):
            raise InvalidSpecError("coefficient exceeds the signed 64-bit range")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> IntPolynomial:
        """Build from ascending coefficients, dropping high-order zeros."""
        trimmed = [int(c) for c in coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        return cls(tuple(trimmed))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def reciprocal(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def normalized(self) -> tuple[IntPolynomial, int]:
        """Divide out the largest power of x; returns the quotient and that power."""
        shift = 0
        while self.coeffs[shift] == 0:
            shift += 1
        return IntPolynomial(self.coeffs[shift:]), shift

    def shifted(self, power: int) -> IntPolynomial:
        """Multiply by x**power."""
        if power < 0:
            raise InvalidSpecError("shift power must be nonnegative")
        return IntPolynomial((0,) * power + self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        total = [0] * size
        for i, c in enumerate(self.coeffs):
            total[i] += c
        for i, c in enumerate(other.coeffs):
            total[i] += c
        return IntPolynomial.from_coeffs(total)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j, d in enumerate(other.coeffs):
                product[i + j] += c * d
        return IntPolynomial.from_coeffs(product)

    def __call__(self, x: complex) -> complex:
        value: complex = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value


def validate_spec(raw: Mapping[str, Any]) -> FamilySpec:
    """Validate raw integer data and build a :class:`FamilySpec`.

    The condition 2n > k is checked later by :func:`expand_polynomial`.

    Args:
        raw: Mapping with the keys ``k``, ``l``, ``a`` and ``b``.

    Returns:
        The validated spec.

    Raises:
        InvalidSpecError: On missing keys, non-integers, negative k or l,
            length mismatches, a zero b_0 or b_l, or a_k = 0 with k > 0.
    """
    missing = [key for key in ("k", "l", "a", "b") if key not in raw]
    if missing:
        raise InvalidSpecError(f"spec is missing field(s): {', '.join(missing)}")

    k = _as_int(raw["k"], "k")
    l = _as_int(raw["l"], "l")
    if k < 0 or l < 0:
        raise InvalidSpecError(f"k and l must be nonnegative, got k={k}, l={l}")

    a = tuple(_as_int(v, "a") for v in _as_sequence(raw["a"], "a"))
    b = tuple(_as_int(v, "b") for v in _as_sequence(raw["b"], "b"))
    if len(a) != k + 1:
        raise InvalidSpecError(f"a must have k+1={k + 1} entries, got {len(a)}")
    if len(b) != l + 1:
        raise InvalidSpecError(f"b must have l+1={l + 1} entries, got {len(b)}")
    if b[0] == 0 or b[-1] == 0:
        raise InvalidSpecError("b_0 and b_l must be nonzero")
    if k > 0 and a[-1] == 0:
        raise InvalidSpecError("a_k must be nonzero when k > 0")

    return FamilySpec(k=k, l=l, a=a, b=b)


def expand_polynomial(spec: FamilySpec, n: int) -> IntPolynomial:
    """Expand P_{2n+2l} for a concrete n.

    Coefficients that land on the same power (possible when n <= k) add up.

    Raises:
        InvalidSpecError: If n is out of range for the spec, or a_k and b_l meet on
            the top power (k = n + l) and cancel.
    """
    check_index(spec, n)

    degree = 2 * n + 2 * spec.l
    center = n + spec.l
    coeffs = [0] * (degree + 1)
    for j, bj in enumerate(spec.b):
        coeffs[center + n + j] += bj
        coeffs[center - n - j] += bj
    coeffs[center] += spec.a[0]
    for j in range(1, spec.k + 1):
        coeffs[center + j] += spec.a[j]
        coeffs[center - j] += spec.a[j]
    if coeffs[-1] == 0:
        raise InvalidSpecError(
            f"a_{spec.k} and b_{spec.l} cancel on x^{degree} at n={n} (k = n + l); P_{{2n+2l}} would lose its degree"
        )

    logger.debug("expanded %s at n=%d to degree %d", spec, n, degree)
    return IntPolynomial(tuple(coeffs))


def check_index(spec: FamilySpec, n: int) -> None:
    """Require n >= 1, 2n > k and n + l >= k (no negative powers of x survive).

    Raises:
        InvalidSpecError: If any condition fails.
    """
    if n < 1 or 2 * n <= spec.k:
        raise InvalidSpecError(f"need n >= 1 and 2n > k, got n={n}, k={spec.k}")
    if n + spec.l < spec.k:
        raise InvalidSpecError(f"need n + l >= k for a polynomial, got n={n}, l={spec.l}, k={spec.k}")


# -- Helpers --


def _as_int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidSpecError(f"{field} must contain integers, got {value!r}")
    return value


def _as_sequence(value: Any, field: str) -> Sequence[Any]:
    if isinstance(value, (str, bytes)) or not isinstance(value, Sequence):
        raise InvalidSpecError(f"{field} must be a list of integers")
    return value

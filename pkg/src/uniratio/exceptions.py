"""Custom exceptions for uniratio."""

from __future__ import annotations

from typing import Sequence


class UniRatioError(Exception):
    """Base exception for uniratio."""

    def __init__(self, message: str = "") -> None:
        self.message = message
        super().__init__(self.message)


class InvalidSpecError(UniRatioError, ValueError):
    """Raised when a family spec, family parameter set or CLI input is malformed."""


class DegenerateEnvelopeError(UniRatioError):
    """Raised when |f2| and |E| coincide identically, so the limit ratio is undefined.

    The finite oracle remains usable for such specs.
    """


class NumericConsistencyError(UniRatioError):
    """Raised when a numeric cross-check fails instead of returning a doubtful value."""


class ClassificationUnstableError(NumericConsistencyError):
    """Raised when root moduli are too close to the unit circle to classify at the tolerance."""

    def __init__(self, message: str = "", moduli: Sequence[float] | None = None) -> None:
        self.moduli = list(moduli or ())
        super().__init__(message)


class GridInstabilityError(NumericConsistencyError):
    """Raised when the sign-change count disagrees with the modulus census."""

    def __init__(self, message: str = "", signchange: int | None = None, modulus: int | None = None) -> None:
        self.signchange = signchange
        self.modulus = modulus
        if not message and signchange is not None and modulus is not None:
            message = f"sign-change count {signchange} != modulus count {modulus}"
        super().__init__(message)


class IntegralityError(NumericConsistencyError):
    """Raised when a quantity known to be an integer is not numerically integral."""


class NormalizationMismatchError(NumericConsistencyError):
    """Raised when a computed Mahler measure misses its reference by a constant factor."""

    def __init__(self, message: str = "", fitted_constant: float | None = None) -> None:
        self.fitted_constant = fitted_constant
        super().__init__(message)


_EXIT_CODE_MAP: dict[type[UniRatioError], int] = {
    InvalidSpecError: 1,
    DegenerateEnvelopeError: 2,
    NumericConsistencyError: 3,
}


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code (1 input, 2 degenerate envelope, 3 numeric failure)."""
    for exc_class, code in _EXIT_CODE_MAP.items():
        if isinstance(exc, exc_class):
            return code
    return 1

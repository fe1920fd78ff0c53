"""uniratio - limit ratio of nonunimodular roots of reciprocal integer polynomial sequences."""

from .client import UniRatio
from .exceptions import (
    ClassificationUnstableError,
    DegenerateEnvelopeError,
    GridInstabilityError,
    IntegralityError,
    InvalidSpecError,
    NormalizationMismatchError,
    NumericConsistencyError,
    UniRatioError,
)
from .family import FamilySpec, IntPolynomial, expand_polynomial, validate_spec
from .named import FamilyParams
from .oracle import ConvergenceReport, RootCensus
from .solver import CurvePair, IntervalSet, LimitRatioResult

__version__ = "1.0.0"

__all__ = [
    "ClassificationUnstableError",
    "ConvergenceReport",
    "CurvePair",
    "DegenerateEnvelopeError",
    "FamilyParams",
    "FamilySpec",
    "GridInstabilityError",
    "IntPolynomial",
    "IntegralityError",
    "IntervalSet",
    "InvalidSpecError",
    "LimitRatioResult",
    "NormalizationMismatchError",
    "NumericConsistencyError",
    "RootCensus",
    "UniRatio",
    "UniRatioError",
    "expand_polynomial",
    "validate_spec",
]

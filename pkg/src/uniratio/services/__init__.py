"""Services exposed by the UniRatio facade."""

from .families import FamilyService, HBoundsRow, SalemRow
from .oracle import OracleService
from .solver import SolverService

__all__ = [
    "FamilyService",
    "HBoundsRow",
    "OracleService",
    "SalemRow",
    "SolverService",
]

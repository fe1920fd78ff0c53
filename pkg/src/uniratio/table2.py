"""Reproduction of the published table of limit Mahler measures and limit ratios."""

from __future__ import annotations

import csv
import io
import logging
import math
import re
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable, Iterable

from .exceptions import NormalizationMismatchError
from .named import FamilyParams, table1_pair
from .solver import limit_ratio_exact, mahler_limit

logger = logging.getLogger("uniratio")

LC_TOLERANCE = 1e-8
MEASURE_TOLERANCE = 1e-6

_LABEL_PATTERN = re.compile(r"^([PQRS])\(\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*([+\-−])\s*)?\)$")

Mapper = Callable[[Callable[["Table2Entry"], "Table2Row"], Iterable["Table2Entry"]], Iterable["Table2Row"]]


@dataclass(frozen=True)
class Table2Entry:
    """One transcribed row; numbers stay strings so no printed digit is lost."""

    row: str
    label: str
    measure: str
    lc: str

    @property
    def params(self) -> FamilyParams | None:
        return parse_family_label(self.label)


@dataclass(frozen=True)
class Table2Row:
    label: str
    published_measure: float
    published_lc: float
    computed_measure: float | None = None
    computed_lc: float | None = None
    status: str = "skipped"

    @property
    def lc_abs_err(self) -> float | None:
        return None if self.computed_lc is None else abs(self.computed_lc - self.published_lc)

    @property
    def measure_abs_err(self) -> float | None:
        return None if self.computed_measure is None else abs(self.computed_measure - self.published_measure)

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "published_measure": self.published_measure,
            "computed_measure": self.computed_measure,
            "published_lc": self.published_lc,
            "computed_lc": self.computed_lc,
            "lc_abs_err": self.lc_abs_err,
            "measure_abs_err": self.measure_abs_err,
            "status": self.status,
        }


def load_table2() -> list[Table2Entry]:
    """Read the bundled transcription, skipping ``#`` comment lines."""
    text = resources.files("uniratio").joinpath("data/table2.csv").read_text(encoding="utf-8")
    lines = [line for line in io.StringIO(text) if not line.startswith("#")]
    return [
        Table2Entry(row=record["row"], label=record["label"], measure=record["measure"], lc=record["lc"])
        for record in csv.DictReader(lines)
    ]


def parse_family_label(label: str) -> FamilyParams | None:
    """Parse "P(2, 3)" or "S(2, 7,-)" into family parameters; None for sequence-notation labels."""
    match = _LABEL_PATTERN.match(label.strip())
    if match is None:
        return None
    name, a, b, sign = match.groups()
    if (name == "S") != (sign is not None):
        return None
    epsilon = None if sign is None else (1 if sign == "+" else -1)
    return FamilyParams(name=name, a=int(a), b=int(b), epsilon=epsilon)


def reproduce_row(entry: Table2Entry) -> Table2Row:
    """Compute the limit ratio and limit Mahler measure of one entry."""
    published_measure, published_lc = float(entry.measure), float(entry.lc)
    params = entry.params
    if params is None:
        logger.debug("table row %s (%s) uses sequence notation; skipped", entry.row, entry.label)
        return Table2Row(label=entry.label, published_measure=published_measure, published_lc=published_lc)

    pair = table1_pair(params)
    result = limit_ratio_exact(pair)
    measure = mahler_limit(pair, result)
    ok = abs(result.lc - published_lc) < LC_TOLERANCE and abs(measure - published_measure) < MEASURE_TOLERANCE
    return Table2Row(
        label=entry.label,
        published_measure=published_measure,
        published_lc=published_lc,
        computed_measure=measure,
        computed_lc=result.lc,
        status="ok" if ok else "mismatch",
    )


def reproduce_table2(mapper: Mapper = map) -> list[Table2Row]:
    """Every transcribed row, in table order."""
    return list(mapper(reproduce_row, load_table2()))


def check_mahler_normalization(computed: float, reference: float, tolerance: float = MEASURE_TOLERANCE) -> None:
    """Fail loudly when a limit measure misses its reference.

    The diagnostic reports the constant c with computed^c = reference, which
    exposes a wrong factor in front of the integral.

    Raises:
        NormalizationMismatchError: If |computed - reference| > tolerance.
    """
    if abs(computed - reference) <= tolerance:
        return
    fitted = math.log(reference) / math.log(computed) if computed > 1.0 else math.nan
    raise NormalizationMismatchError(
        f"Mahler measure {computed:.16g} != reference {reference:.16g}; fitted normalization constant {fitted:.6g}",
        fitted_constant=fitted,
    )

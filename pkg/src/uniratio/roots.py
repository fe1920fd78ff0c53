"""Bracketing root isolation for smooth real functions on a segment.

A uniform grid finds sign changes; between grid points the sign changes of the
derivative locate extrema, which exposes root pairs hiding inside one cell and
tangential (even multiplicity) zeros.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy.optimize import brentq

logger = logging.getLogger("uniratio")

BRENT_XTOL = 1e-15

RealFunction = Callable[[Any], Any]


@dataclass(frozen=True)
class Root:
    """An isolated zero: its position, multiplicity (1 or 2) and residual |f(position)|."""

    position: float
    multiplicity: int
    residual: float


def isolate_roots(
    func: RealFunction,
    dfunc: RealFunction,
    lo: float,
    hi: float,
    cells: int,
    zero_tol: float,
) -> list[Root]:
    """Find every zero of ``func`` on [lo, hi].

    Args:
        func: Vectorised function.
        dfunc: Any function with the same interior sign changes as func'.
        lo: Left end.
        hi: Right end.
        cells: Number of grid cells; should oversample the expected zero count.
        zero_tol: |func| at or below this counts as zero.

    Returns:
        Roots sorted by position. Sign-changing zeros have multiplicity 1,
        touching zeros multiplicity 2.
    """
    grid = np.linspace(lo, hi, cells + 1)
    values = np.asarray(func(grid), dtype=float)
    slopes = np.asarray(dfunc(grid), dtype=float)
    signs = np.where(np.abs(values) <= zero_tol, 0, np.sign(values)).astype(int)

    roots: list[Root] = []

    for i in np.flatnonzero(signs == 0):
        left = signs[i - 1] if i > 0 else 0
        right = signs[i + 1] if i < cells else 0
        if left != 0 and right != 0 and left != right:
            position = _refine(func, float(grid[i - 1]), float(grid[i + 1]))
            roots.append(_root(func, position, 1))
        elif left != 0 and left == right:
            roots.append(_root(func, float(grid[i]), 2))
        else:
            roots.append(_root(func, float(grid[i]), 1))

    for i in range(cells):
        s0, s1 = signs[i], signs[i + 1]
        if s0 == 0 or s1 == 0:
            continue
        a, b = float(grid[i]), float(grid[i + 1])
        if s0 != s1:
            roots.append(_root(func, _refine(func, a, b), 1))
            continue
        d0, d1 = slopes[i], slopes[i + 1]
        if d0 * d1 > 0:
            continue
        critical = _critical_point(dfunc, a, b, d0, d1)
        peak = float(func(critical))
        if abs(peak) <= zero_tol:
            roots.append(_root(func, critical, 2))
        elif np.sign(peak) != s0:
            roots.append(_root(func, _refine(func, a, critical), 1))
            roots.append(_root(func, _refine(func, critical, b), 1))

    roots.sort(key=lambda root: root.position)
    logger.debug("isolated %d zeros on [%.6g, %.6g] with %d cells", len(roots), lo, hi, cells)
    return roots


# -- Helpers --


def _refine(func: RealFunction, a: float, b: float) -> float:
    return float(brentq(lambda x: float(func(x)), a, b, xtol=BRENT_XTOL, maxiter=200))


def _critical_point(dfunc: RealFunction, a: float, b: float, d0: float, d1: float) -> float:
    if d0 == 0:
        return a
    if d1 == 0:
        return b
    return _refine(dfunc, a, b)


def _root(func: RealFunction, position: float, multiplicity: int) -> Root:
    return Root(position=position, multiplicity=multiplicity, residual=abs(float(func(position))))

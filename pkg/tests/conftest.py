"""Shared test fixtures."""

import pytest

from uniratio import FamilySpec, UniRatio


@pytest.fixture
def client():
    """Create a serial UniRatio facade for testing."""
    with UniRatio(threads=0) as ur:
        yield ur


@pytest.fixture
def trivial_spec():
    """P = x^{2n} + 1: every root unimodular."""
    return FamilySpec(k=0, l=0, a=(0,), b=(1,))


@pytest.fixture
def dominant_spec():
    """|f2| = 3/2 > 1 = |E| everywhere: no unimodular roots."""
    return FamilySpec(k=0, l=0, a=(3,), b=(1,))


@pytest.fixture
def h2_spec():
    return FamilySpec(k=0, l=1, a=(1,), b=(1, 1))


@pytest.fixture
def pisot_spec():
    """Sequence built on x^2 - x - 1; not palindromic."""
    return FamilySpec(k=0, l=2, a=(0,), b=(-1, -1, 1))

"""Shared brute-force oracles and corpus helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from configspaces.core import Configuration, Valuation
from configspaces.poly import Polynomial


def powerset_mobius(config: Configuration, valuation: Valuation | None = None) -> Polynomial:
    """Oracle: alternating sum over all 2**n subsets, no backtracking."""
    if valuation is None:
        valuation = Valuation.uniform(config.n)
    coeffs = [Fraction(0)] * (config.n + 1)
    for mask in range(1 << config.n):
        if config.is_independent(mask):
            k = mask.bit_count()
            value = valuation.of(mask)
            coeffs[k] += -value if k % 2 else value
    return Polynomial(coeffs)


def direct_transform(config: Configuration, valuation: Valuation, x: int) -> Polynomial:
    """Oracle for H(x): the alternating sum over independent supersets of x."""
    coeffs = [Fraction(0)] * (config.n + 1)
    for y in range(1 << config.n):
        if y & x == x and config.is_independent(y):
            k = y.bit_count()
            sign = -1 if (k - x.bit_count()) % 2 else 1
            coeffs[k] += sign * valuation.of(y)
    return Polynomial(coeffs)


def brute_independence_family(config: Configuration) -> set[int]:
    return {m for m in range(1 << config.n) if config.is_independent(m)}


@pytest.fixture
def rng():
    return random.Random(20250810)

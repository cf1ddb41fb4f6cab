"""Shared fixtures and instance-building helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fairdiv import model
from fairdiv.kb import load_kb


def F(x) -> Fraction:
    return Fraction(x)


def additive_instance(rows, entitlements=None) -> model.Instance:
    """Instance with one Additive valuation per row of per-item values."""
    n = len(rows)
    if entitlements is None:
        entitlements = [Fraction(1, n)] * n
    return model.Instance(
        tuple(Fraction(w) for w in entitlements),
        tuple(model.Additive(tuple(Fraction(v) for v in row)) for row in rows),
    )


def identical_additive(values, n, entitlements=None) -> model.Instance:
    return additive_instance([list(values)] * n, entitlements)


def alloc(*bundles) -> model.Allocation:
    return model.make_allocation(bundles)


@pytest.fixture(scope="session")
def kb():
    return load_kb()

"""Tests for the connection-point registry."""

from __future__ import annotations

import pytest

from cellplan.errors import MissingParameterError, RegistryConflictError
from cellplan.geom.vectors import Point3
from cellplan.twin import ParamRegistry


@pytest.fixture
def registry():
    reg = ParamRegistry()
    reg.add("Brick", "top", Point3(0, 0.5, 0))
    return reg


def test_lookup(registry):
    assert registry.lookup("Brick", "top") == Point3(0, 0.5, 0)
    assert registry.get("Brick.top") == Point3(0, 0.5, 0)
    assert "Brick.top" in registry
    assert len(registry) == 1


def test_equal_value_is_accepted(registry):
    registry.add("Brick", "top", Point3(0, 0.5, 0))
    assert registry.keys() == ["Brick.top"]


def test_conflicting_value(registry):
    with pytest.raises(RegistryConflictError, match="Brick.top"):
        registry.add("Brick", "top", Point3(0, 0.6, 0))


def test_missing(registry):
    with pytest.raises(MissingParameterError, match="Brick.bottom"):
        registry.lookup("Brick", "bottom")

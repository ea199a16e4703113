"""Shared test fixtures."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from unittest.mock import patch

import pytest

from cellplan.caex import parse_caex
from cellplan.config.geometry import CellGeometry, load_geometry
from cellplan.config.settings import Settings, get_settings
from cellplan.items import extract_items
from cellplan.samples import sample_paths
from cellplan.twin import DigitalTwin, build_twin


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path):
    """Never read or write the real ~/.cellplan/config.json."""
    get_settings.cache_clear()
    with patch("cellplan.config.settings.CONFIG_FILE", tmp_path / "config.json"):
        yield tmp_path / "config.json"
    get_settings.cache_clear()


@pytest.fixture
def test_settings() -> Settings:
    """Default tuning, independent of the environment."""
    return Settings()


@pytest.fixture
def sample_twin() -> Callable[[str], tuple[DigitalTwin, CellGeometry]]:
    """Build a fresh twin and geometry from a bundled sample by name."""

    def _build(name: str) -> tuple[DigitalTwin, CellGeometry]:
        aml, geometry_path = sample_paths(name)
        geometry = load_geometry(geometry_path)
        stream = extract_items(parse_caex(aml.read_bytes()))
        return build_twin(stream, geometry), geometry

    return _build


@pytest.fixture
def cranfield_bytes() -> bytes:
    return sample_paths("cranfield")[0].read_bytes()


@pytest.fixture
def lego_bytes() -> bytes:
    return sample_paths("lego_overhang")[0].read_bytes()

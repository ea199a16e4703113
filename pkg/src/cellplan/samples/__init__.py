"""Sample products and matching cell geometries shipped inside the package."""

from __future__ import annotations

import shutil
from pathlib import Path

SAMPLES_DIR = Path(__file__).parent

# name -> (product description, cell geometry manifest)
SAMPLES: dict[str, tuple[str, str]] = {
    "cranfield": ("cranfield.aml", "cranfield_geometry.json"),
    "lego_overhang": ("lego_overhang.aml", "lego_geometry.json"),
    "tower3": ("tower3.aml", "tower_geometry.json"),
    "tower20": ("tower20.aml", "tower_geometry.json"),
}


def sample_paths(name: str) -> tuple[Path, Path]:
    """Paths of a sample's ``.aml`` file and geometry manifest."""
    try:
        aml, geometry = SAMPLES[name]
    except KeyError:
        raise KeyError(f"Unknown sample '{name}' (choose from {', '.join(SAMPLES)})") from None
    return SAMPLES_DIR / aml, SAMPLES_DIR / geometry


def copy_sample(name: str, dest: Path) -> list[Path]:
    """Copy a sample's files into ``dest``, leaving existing files alone."""
    dest.mkdir(parents=True, exist_ok=True)
    copied = []
    for src in sample_paths(name):
        target = dest / src.name
        if not target.exists():
            shutil.copy2(src, target)
            copied.append(target)
    return copied

"""Atomic output files: write to a sibling .tmp, then replace."""

from __future__ import annotations

import logging
from pathlib import Path

logger = logging.getLogger("cellplan.outputs")


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    # newline="" keeps "\n" on every platform so outputs stay byte-identical
    with tmp.open("w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    tmp.replace(path)
    logger.debug("Wrote %s (%d bytes)", path, len(text))
    return path

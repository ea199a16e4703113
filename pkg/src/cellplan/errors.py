"""Domain exceptions raised across cellplan.

Every error derives from ``CellplanError`` so the CLI can map the whole family to
exit status 1 while letting I/O and usage problems fall through to exit status 2.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from cellplan.geom.boxes import CollisionReport


class CellplanError(ValueError):
    """Base class for every domain failure."""


# -- CAEX ---------------------------------------------------------------------


class CaexParseError(CellplanError):
    """The input is not well-formed XML."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class CaexStructureError(CellplanError):
    """Well-formed XML that breaks a CAEX structural rule (e.g. duplicate IDs)."""


class LinkResolutionError(CellplanError):
    """An InternalLink partner reference could not be resolved."""


class DanglingLinkError(LinkResolutionError):
    """The partner reference names an element ID that does not exist."""


class InterfaceMismatchError(LinkResolutionError):
    """The element exists but its class declares no interface of that name."""


# -- Items --------------------------------------------------------------------


class ItemFormatError(CellplanError):
    """A line of an items file does not follow the item grammar."""

    def __init__(self, message: str, line: int) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class ItemStreamError(CellplanError):
    """Items are individually valid but violate stream ordering or references."""


# -- Geometry and configuration -------------------------------------------------


class InvalidGeometryError(CellplanError):
    """A box with non-positive or non-finite extents."""


class GeometryManifestError(CellplanError):
    """The cell geometry manifest cannot be loaded or is inconsistent."""


# -- Twin ---------------------------------------------------------------------


class RegistryConflictError(CellplanError):
    """A parameter key was registered twice with different values."""


class MissingParameterError(CellplanError):
    """A connection-point lookup hit a key absent from the registry."""


class UnknownTypeError(CellplanError):
    """A part type has no extents in the cell geometry."""


class UnknownInstanceError(CellplanError):
    """A connection references an instance that was never created."""


class EmptyProductError(CellplanError):
    """The product has no parts."""


class ConnectivityError(CellplanError):
    """The connection graph splits into several components."""

    def __init__(self, message: str, components: Sequence[Sequence[str]] = ()) -> None:
        self.components = [list(c) for c in components]
        super().__init__(message)


class PlanningError(CellplanError):
    """Every candidate trajectory for a part collides."""

    def __init__(self, part: str, reports: Sequence[CollisionReport]) -> None:
        self.part = part
        self.reports = list(reports)
        blocked = ", ".join(f"{r.strategy}->{r.obstacle_id}" for r in self.reports)
        super().__init__(f"No collision-free path for '{part}' ({blocked or 'no candidates'})")

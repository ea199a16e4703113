"""Digital twin data model: parts, connections and the twin itself."""

from __future__ import annotations

from dataclasses import dataclass, field

from cellplan.errors import UnknownInstanceError
from cellplan.geom.boxes import Aabb, aabb_at
from cellplan.geom.vectors import Orientation, Point3, Pose
from cellplan.twin.registry import ParamRegistry


@dataclass(eq=False)
class DigitalPart:
    """One physical part of the product.

    ``target`` is the resolved assembly pose; ``pose`` is where the part is
    right now (``None`` until the cell has placed it somewhere).
    """

    instance_name: str
    type_name: str
    color: str
    orientation: Orientation
    half_extents: Point3
    registry: ParamRegistry = field(repr=False)
    pose: Pose | None = None
    target: Pose | None = None
    assembled: bool = False
    delivered: bool = False

    def target_box(self) -> Aabb:
        if self.target is None:
            raise ValueError(f"Part '{self.instance_name}' has no resolved target pose")
        return aabb_at(self.half_extents, self.target)

    def box(self) -> Aabb | None:
        return aabb_at(self.half_extents, self.pose) if self.pose is not None else None

    def local_point(self, name: str) -> Point3:
        return self.registry.lookup(self.type_name, name)


@dataclass(eq=False)
class Connection:
    part1: DigitalPart
    part2: DigitalPart
    connection_point1: str
    connection_point2: str

    def __post_init__(self) -> None:
        if self.part1 is self.part2:
            raise ValueError(f"Part '{self.part1.instance_name}' cannot connect to itself")

    def involves(self, part: DigitalPart) -> bool:
        return self.part1 is part or self.part2 is part

    def other(self, part: DigitalPart) -> tuple[DigitalPart, str, str]:
        """``(partner, partner point, own point)`` seen from ``part``."""
        if self.part1 is part:
            return self.part2, self.connection_point2, self.connection_point1
        return self.part1, self.connection_point1, self.connection_point2


@dataclass(eq=False)
class DigitalTwin:
    parts: list[DigitalPart] = field(default_factory=list)
    connections: list[Connection] = field(default_factory=list)
    registry: ParamRegistry = field(default_factory=ParamRegistry)
    base_part: DigitalPart | None = None

    def part(self, name: str) -> DigitalPart:
        for p in self.parts:
            if p.instance_name == name:
                return p
        raise UnknownInstanceError(f"No part named '{name}'")

    def connections_of(self, part: DigitalPart) -> list[Connection]:
        return [c for c in self.connections if c.involves(part)]

    def degree(self, part: DigitalPart) -> int:
        return len(self.connections_of(part))

    def reset_flags(self) -> None:
        for p in self.parts:
            p.assembled = False
            p.delivered = False

    def reset_state(self) -> None:
        """Back to the pre-assembly state, keeping resolved targets."""
        self.reset_flags()
        for p in self.parts:
            p.pose = None

    @property
    def all_assembled(self) -> bool:
        return all(p.assembled for p in self.parts)

    @property
    def resolved(self) -> bool:
        return bool(self.parts) and all(p.target is not None for p in self.parts)

"""Assembly pose resolution by connection-point translation."""

from __future__ import annotations

import logging

from cellplan.errors import ConnectivityError, EmptyProductError
from cellplan.geom.vectors import Point3, Pose, rotate_point
from cellplan.twin.models import Connection, DigitalPart, DigitalTwin

logger = logging.getLogger("cellplan.twin.assembly")


def get_connection_point(part: DigitalPart, name: str, *, at_target: bool = False) -> Point3:
    """World position of connection point ``name``: position + rotated local point."""
    pose = part.target if at_target else part.pose
    if pose is None:
        which = "target" if at_target else "current"
        raise ValueError(f"Part '{part.instance_name}' has no {which} pose")
    return pose.position + rotate_point(part.local_point(name), pose.orientation)


def select_base_part(twin: DigitalTwin) -> DigitalPart:
    """Part with the most connections; ties go to the smallest instance name."""
    if not twin.parts:
        raise EmptyProductError("Product has no parts")
    return min(twin.parts, key=lambda p: (-twin.degree(p), p.instance_name))


def _place(anchor: DigitalPart, anchor_point: str, part: DigitalPart, part_point: str) -> None:
    world = get_connection_point(anchor, anchor_point)
    local = rotate_point(part.local_point(part_point), part.orientation)
    part.pose = Pose(world - local, part.orientation)
    part.assembled = True


def _next_placement(connections: list[Connection]) -> bool:
    for c in connections:
        if c.part1.assembled and not c.part2.assembled:
            _place(c.part1, c.connection_point1, c.part2, c.connection_point2)
            return True
        if c.part2.assembled and not c.part1.assembled:
            _place(c.part2, c.connection_point2, c.part1, c.connection_point1)
            return True
    return False


def resolve_assembly(twin: DigitalTwin, origin: Point3 | None = None) -> dict[str, Pose]:
    """Resolve every part's target pose, with the base part at ``origin``.

    Afterwards the assembled flags are cleared for sequencing, current poses
    are unset and the resolved poses are kept as ``target``.
    """
    base = select_base_part(twin)
    twin.base_part = base
    twin.reset_state()
    base.pose = Pose(origin or Point3(), base.orientation)
    base.assembled = True

    while _next_placement(twin.connections):
        pass

    stranded = [p.instance_name for p in twin.parts if not p.assembled]
    if stranded:
        raise ConnectivityError(
            f"Parts unreachable from base '{base.instance_name}': {', '.join(stranded)}",
            [[p.instance_name for p in twin.parts if p.assembled], stranded],
        )

    targets: dict[str, Pose] = {}
    for p in twin.parts:
        p.target = p.pose
        targets[p.instance_name] = p.pose
    twin.reset_state()
    logger.debug("Resolved %d target poses from base '%s'", len(targets), base.instance_name)
    return targets


def connection_residuals(twin: DigitalTwin) -> list[tuple[Connection, float]]:
    """Distance between the two world connection points of every connection at target."""
    return [
        (
            c,
            get_connection_point(c.part1, c.connection_point1, at_target=True).distance(
                get_connection_point(c.part2, c.connection_point2, at_target=True)
            ),
        )
        for c in twin.connections
    ]

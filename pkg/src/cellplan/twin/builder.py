"""ItemStream + cell geometry → DigitalTwin."""

from __future__ import annotations

import logging

from cellplan.config.geometry import CellGeometry
from cellplan.errors import ConnectivityError, ItemStreamError
from cellplan.geom.vectors import Orientation, Point3
from cellplan.items.models import ItemStream
from cellplan.twin.models import Connection, DigitalPart, DigitalTwin

logger = logging.getLogger("cellplan.twin.builder")


def components(twin: DigitalTwin) -> list[list[str]]:
    """Connected components of the part graph, each in create order."""
    index = {id(p): i for i, p in enumerate(twin.parts)}
    parent = list(range(len(twin.parts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in twin.connections:
        a, b = find(index[id(c.part1)]), find(index[id(c.part2)])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[str]] = {}
    for i, p in enumerate(twin.parts):
        groups.setdefault(find(i), []).append(p.instance_name)
    return list(groups.values())


def build_twin(stream: ItemStream, geometry: CellGeometry) -> DigitalTwin:
    """Registry from parameters, one part per create, one connection per connection item."""
    twin = DigitalTwin()
    for item in stream.parameters:
        type_name, param_name = item.fields[0], item.fields[1]
        twin.registry.add(type_name, param_name, Point3(*item.coordinates()))

    for item in stream.creates:
        type_name, instance, color, orientation = item.fields
        twin.parts.append(
            DigitalPart(
                instance_name=instance,
                type_name=type_name,
                color=color,
                orientation=Orientation.parse(orientation),
                half_extents=geometry.half_extents(type_name),
                registry=twin.registry,
            )
        )

    for item in stream.connections:
        a, pa, b, pb = item.fields
        part_a, part_b = twin.part(a), twin.part(b)
        part_a.local_point(pa)
        part_b.local_point(pb)
        try:
            twin.connections.append(Connection(part_a, part_b, pa, pb))
        except ValueError as exc:
            raise ItemStreamError(str(exc)) from None

    groups = components(twin)
    if len(groups) > 1:
        listing = "; ".join(", ".join(g) for g in groups)
        raise ConnectivityError(f"Product splits into {len(groups)} groups: {listing}", groups)
    logger.info(
        "Built twin: %d parts, %d connections, %d parameters",
        len(twin.parts), len(twin.connections), len(twin.registry),
    )
    return twin

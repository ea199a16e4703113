"""Digital twin: part graph, pose resolution, sequencing and path planning."""

from cellplan.geom.path import Strategy, Trajectory
from cellplan.twin.assembly import (
    connection_residuals,
    get_connection_point,
    resolve_assembly,
    select_base_part,
)
from cellplan.twin.builder import build_twin
from cellplan.twin.models import Connection, DigitalPart, DigitalTwin
from cellplan.twin.paths import build_candidate, plan_assembly_path
from cellplan.twin.registry import ParamRegistry
from cellplan.twin.sequence import next_unassembled_part, plan_sequence

__all__ = [
    "Connection",
    "DigitalPart",
    "DigitalTwin",
    "ParamRegistry",
    "Strategy",
    "Trajectory",
    "build_candidate",
    "build_twin",
    "connection_residuals",
    "get_connection_point",
    "next_unassembled_part",
    "plan_assembly_path",
    "plan_sequence",
    "resolve_assembly",
    "select_base_part",
]

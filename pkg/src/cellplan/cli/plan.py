"""Plan document: assembly sequence, target poses and approach trajectories without simulating."""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import BaseModel

from cellplan.cell.engine import STATION_ID, drop_pose, place_targets
from cellplan.cell.trace import TracePose
from cellplan.config.geometry import CellGeometry
from cellplan.config.settings import Settings
from cellplan.geom.boxes import Obstacle
from cellplan.geom.path import Trajectory, Translate
from cellplan.twin.assembly import connection_residuals
from cellplan.twin.models import DigitalTwin
from cellplan.twin.paths import plan_assembly_path
from cellplan.twin.sequence import plan_sequence

logger = logging.getLogger("cellplan.cli.plan")


class SegmentModel(BaseModel):
    kind: Literal["translate", "rotate"]
    start: tuple[float, ...]  # x,y,z for translations; yaw,pitch for rotations
    end: tuple[float, ...]


class PartPlan(BaseModel):
    instance: str
    type_name: str
    target: TracePose
    strategy: str
    segments: list[SegmentModel]


class ResidualModel(BaseModel):
    part1: str
    point1: str
    part2: str
    point2: str
    residual: float


class PlanDocument(BaseModel):
    sequence: list[str]
    parts: list[PartPlan]
    residuals: list[ResidualModel]


def _segments(trajectory: Trajectory) -> list[SegmentModel]:
    out = []
    for seg in trajectory.segments:
        if isinstance(seg, Translate):
            out.append(
                SegmentModel(
                    kind="translate", start=seg.start.as_tuple(), end=seg.end.as_tuple()
                )
            )
        else:
            out.append(
                SegmentModel(
                    kind="rotate",
                    start=(seg.start.yaw, seg.start.pitch),
                    end=(seg.end.yaw, seg.end.pitch),
                )
            )
    return out


def build_plan(twin: DigitalTwin, geometry: CellGeometry, settings: Settings) -> PlanDocument:
    """Resolve, sequence and plan every part against the growing assembly.

    Each approach starts from the part's drop-zone pose, as in the cell.
    Raises ``PlanningError`` for the first part with no collision-free strategy.
    """
    place_targets(twin, geometry)
    order = plan_sequence(twin)
    envelope = geometry.arm_envelope.build() if settings.planner.plan_with_arm_envelope else None
    static: list[Obstacle] = [(STATION_ID, geometry.station.surface_box())]

    plans: list[PartPlan] = []
    try:
        for part in order:
            assert part.target is not None
            assembled = [(p.instance_name, p.target_box()) for p in twin.parts if p.assembled]
            obstacles = sorted(static + assembled, key=lambda o: o[0])
            trajectory = plan_assembly_path(
                twin, part, obstacles,
                start=drop_pose(geometry, part), envelope=envelope,
                planner=settings.planner, collision=settings.collision,
            )
            part.assembled = True
            plans.append(
                PartPlan(
                    instance=part.instance_name,
                    type_name=part.type_name,
                    target=TracePose.of(part.target),
                    strategy=str(trajectory.strategy),
                    segments=_segments(trajectory),
                )
            )
    finally:
        twin.reset_flags()

    residuals = [
        ResidualModel(
            part1=c.part1.instance_name,
            point1=c.connection_point1,
            part2=c.part2.instance_name,
            point2=c.connection_point2,
            residual=r,
        )
        for c, r in connection_residuals(twin)
    ]
    logger.info("Planned %d parts", len(plans))
    return PlanDocument(
        sequence=[p.instance_name for p in order], parts=plans, residuals=residuals
    )

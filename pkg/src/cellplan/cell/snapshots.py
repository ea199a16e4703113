"""Scene snapshots: every entity's pose and box at a tick, as structured data."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import BaseModel

from cellplan.cell.trace import EventType, TraceEvent, TracePose
from cellplan.geom.boxes import Aabb
from cellplan.geom.vectors import Pose
from cellplan.outputs import write_text

if TYPE_CHECKING:
    from cellplan.cell.engine import SimState

logger = logging.getLogger("cellplan.cell.snapshots")


class BoxModel(BaseModel):
    center: tuple[float, float, float]
    half_extents: tuple[float, float, float]

    @classmethod
    def of(cls, box: Aabb) -> BoxModel:
        return cls(center=box.center.as_tuple(), half_extents=box.half_extents.as_tuple())


class EntitySnapshot(BaseModel):
    id: str
    kind: str  # part | arm | mobile | buffer | station
    pose: TracePose | None = None
    box: BoxModel | None = None
    count: int | None = None
    status: str | None = None


class Snapshot(BaseModel):
    tick: int
    phase: str
    reason: str  # interval | connect
    entities: list[EntitySnapshot]


def _pose(pose: Pose | None) -> TracePose | None:
    return TracePose.of(pose) if pose is not None else None


def take_snapshot(state: SimState, reason: str) -> Snapshot:
    entities: list[EntitySnapshot] = []
    for part in state.twin.parts:
        box = part.box()
        if part.assembled:
            status = "assembled"
        elif part is state.arm.held:
            status = "held"
        elif part.delivered or part.pose is not None:
            status = "staged"
        else:
            status = "waiting"
        entities.append(
            EntitySnapshot(
                id=part.instance_name,
                kind="part",
                pose=_pose(part.pose),
                box=BoxModel.of(box) if box is not None else None,
                status=status,
            )
        )
    entities.append(
        EntitySnapshot(
            id="arm", kind="arm", pose=_pose(state.arm.pose), status=str(state.arm.task)
        )
    )
    entities.append(
        EntitySnapshot(
            id="mobile",
            kind="mobile",
            pose=_pose(Pose(state.mobile.position)),
            status=str(state.mobile.phase),
        )
    )
    for buffer in state.buffers:
        head = buffer.peek()
        entities.append(
            EntitySnapshot(
                id=buffer.id,
                kind="buffer",
                pose=_pose(Pose(head)) if head is not None else None,
                count=buffer.count,
            )
        )
    for obstacle_id, box in state.static_obstacles:
        entities.append(EntitySnapshot(id=obstacle_id, kind="station", box=BoxModel.of(box)))
    return Snapshot(tick=state.tick, phase=str(state.mode), reason=reason, entities=entities)


class SnapshotRecorder:
    """Simulation observer taking a snapshot every ``every`` ticks and at each connect.

    ``every=0`` records connect events only.
    """

    def __init__(self, every: int = 0) -> None:
        if every < 0:
            raise ValueError(f"every must be >= 0, got {every}")
        self.every = every
        self.snapshots: list[Snapshot] = []

    def __call__(self, state: SimState, events: list[TraceEvent]) -> None:
        if any(e.event is EventType.CONNECT for e in events):
            self.snapshots.append(take_snapshot(state, "connect"))
        elif self.every and state.tick % self.every == 0:
            self.snapshots.append(take_snapshot(state, "interval"))


def write_snapshots(snapshots: list[Snapshot], directory: Path) -> list[Path]:
    """One JSON file per snapshot, named by sequence number and tick."""
    paths = []
    for index, snap in enumerate(snapshots):
        path = directory / f"snapshot_{index:05d}_t{snap.tick:07d}.json"
        paths.append(write_text(path, snap.model_dump_json(indent=2) + "\n"))
    logger.info("Wrote %d snapshots to %s", len(paths), directory)
    return paths

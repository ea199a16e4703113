"""Simulation trace: one JSON object per line."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel

from cellplan.geom.vectors import Pose


class EventType(StrEnum):
    PICK = "pick"
    DROP = "drop"
    PAUSED = "paused"
    MOVE = "move"
    ROTATE = "rotate"
    COLLISION = "collision"
    REPLAN = "replan"
    CONNECT = "connect"
    STARVATION = "starvation"
    DONE = "done"
    FAIL = "fail"


def _clean(v: float) -> float:
    # Nine decimals keep traces stable across platforms; +0.0 folds -0.0
    return round(v, 9) + 0.0


class TracePose(BaseModel):
    x: float
    y: float
    z: float
    yaw: float
    pitch: float

    @classmethod
    def of(cls, pose: Pose) -> TracePose:
        p, o = pose.position, pose.orientation
        return cls(
            x=_clean(p.x), y=_clean(p.y), z=_clean(p.z),
            yaw=_clean(o.yaw), pitch=_clean(o.pitch),
        )


class TraceEvent(BaseModel):
    tick: int
    entity: str
    event: EventType
    part: str | None = None
    pose: TracePose | None = None
    detail: str | None = None

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


@dataclass
class Trace:
    """Events of a run plus the outcome and per-phase final part poses."""

    events: list[TraceEvent] = field(default_factory=list)
    failed: bool = False
    final_poses: dict[str, dict[str, Pose | None]] = field(default_factory=dict)
    connect_order: dict[str, list[str]] = field(default_factory=dict)

    def to_jsonl(self) -> str:
        return "".join(e.to_line() + "\n" for e in self.events)

    def of_type(self, event: EventType) -> list[TraceEvent]:
        return [e for e in self.events if e.event is event]

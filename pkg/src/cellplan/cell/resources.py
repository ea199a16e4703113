"""Cell resources: part buffers, the mobile robot and the assembly robot arm."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import StrEnum

from cellplan.config.geometry import BufferSpec
from cellplan.geom.path import Strategy, Trajectory
from cellplan.geom.vectors import Point3, Pose
from cellplan.twin.models import DigitalPart


@dataclass
class Buffer:
    id: str
    type_name: str
    slots: deque[Point3] = field(default_factory=deque)

    @classmethod
    def from_spec(cls, spec: BufferSpec) -> Buffer:
        return cls(spec.id, spec.type_name, deque(spec.pick_positions()))

    @property
    def count(self) -> int:
        return len(self.slots)

    def peek(self) -> Point3 | None:
        return self.slots[0] if self.slots else None


def buffer_give_part(buffer: Buffer, type_name: str) -> Point3 | None:
    """Pop the next pick position if the buffer holds ``type_name``."""
    if buffer.type_name != type_name or not buffer.slots:
        return None
    return buffer.slots.popleft()


class MobilePhase(StrEnum):
    IDLE = "idle"
    TO_BUFFER = "to_buffer"
    PICKING = "picking"
    TO_STATION = "to_station"
    DROPPING = "dropping"


@dataclass
class MobileRobot:
    """Delivers parts from buffers to the drop zone, one at a time, in queue order."""

    position: Point3
    queue: deque[DigitalPart] = field(default_factory=deque)
    carried: DigitalPart | None = None
    phase: MobilePhase = MobilePhase.IDLE
    errand: DigitalPart | None = None  # part currently being fetched
    buffer: Buffer | None = None
    destination: Point3 | None = None
    halted: bool = False

    def travel(self, speed: float) -> bool:
        """Move straight toward ``destination``; True once there."""
        assert self.destination is not None
        gap = self.destination - self.position
        distance = gap.norm()
        if distance <= speed:
            self.position = self.destination
            return True
        self.position = self.position + gap * (speed / distance)
        return False


class ArmTask(StrEnum):
    IDLE = "idle"
    FETCHING = "fetching"
    CARRYING = "carrying"


@dataclass
class RobotArm:
    """Cartesian gantry with yaw and pitch joints; ``pose`` is the gripped part's center."""

    pose: Pose
    held: DigitalPart | None = None
    task: ArmTask = ArmTask.IDLE
    trajectory: Trajectory | None = None
    approach: Trajectory | None = None  # the planned candidate inside ``trajectory``
    segment: int = 0
    progress: float = 0.0
    unchecked_segments: int = 0  # leading retreat segments skipped by collision checks

    def start(self, trajectory: Trajectory, task: ArmTask, unchecked: int = 0) -> None:
        self.trajectory = trajectory
        self.task = task
        self.segment = 0
        self.progress = 0.0
        self.unchecked_segments = unchecked

    def clear(self) -> None:
        self.trajectory = None
        self.approach = None
        self.task = ArmTask.IDLE
        self.segment = 0
        self.progress = 0.0
        self.unchecked_segments = 0

    @property
    def strategy(self) -> Strategy | None:
        return self.trajectory.strategy if self.trajectory is not None else None

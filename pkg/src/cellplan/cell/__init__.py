"""Manufacturing cell: buffers, mobile robot, assembly arm and the tick loop."""

from cellplan.cell.engine import (
    Mode,
    SimState,
    mobile_step,
    new_state,
    place_targets,
    run_simulation,
    step,
    tick,
)
from cellplan.cell.resources import Buffer, MobileRobot, RobotArm, buffer_give_part
from cellplan.cell.snapshots import Snapshot, SnapshotRecorder, take_snapshot, write_snapshots
from cellplan.cell.trace import EventType, Trace, TraceEvent, TracePose

__all__ = [
    "Buffer",
    "EventType",
    "MobileRobot",
    "Mode",
    "RobotArm",
    "SimState",
    "Snapshot",
    "SnapshotRecorder",
    "Trace",
    "TraceEvent",
    "TracePose",
    "buffer_give_part",
    "mobile_step",
    "new_state",
    "place_targets",
    "run_simulation",
    "step",
    "tick",
    "take_snapshot",
    "write_snapshots",
]

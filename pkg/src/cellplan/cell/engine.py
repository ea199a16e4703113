"""Fixed-step cell simulation.

Each tick runs one cycle: the mobile robot advances its delivery route
(physical mode only), then the assembly arm either advances along its current
trajectory or picks the next part to assemble. Virtual mode plans with the
part box only and discovers arm collisions while executing; physical mode
replays the trajectories recorded during the virtual phase.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict, deque
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

from cellplan.cell.resources import (
    ArmTask,
    Buffer,
    MobilePhase,
    MobileRobot,
    RobotArm,
    buffer_give_part,
)
from cellplan.cell.trace import EventType, Trace, TraceEvent, TracePose
from cellplan.config.constants import RESIDUAL_TOLERANCE
from cellplan.config.geometry import CellGeometry
from cellplan.config.settings import Settings, get_settings
from cellplan.errors import PlanningError
from cellplan.geom.boxes import ArmEnvelope, Obstacle, body_boxes, first_hit, sweep_check
from cellplan.geom.path import SegmentChain, Strategy, Trajectory, Translate
from cellplan.geom.vectors import IDENTITY, Point3, Pose
from cellplan.twin.assembly import resolve_assembly
from cellplan.twin.models import DigitalPart, DigitalTwin
from cellplan.twin.paths import plan_assembly_path, safe_height
from cellplan.twin.sequence import next_unassembled_part, plan_sequence

logger = logging.getLogger("cellplan.cell.engine")

STATION_ID = "station"


class Mode(StrEnum):
    VIRTUAL = "virtual"
    PHYSICAL = "physical"
    BOTH = "both"


@dataclass(eq=False)
class SimState:
    twin: DigitalTwin
    geometry: CellGeometry
    settings: Settings
    mode: Mode
    arm: RobotArm
    mobile: MobileRobot
    buffers: list[Buffer]
    envelope: ArmEnvelope
    static_obstacles: list[Obstacle]
    tick: int = 0
    drop_zone_part: DigitalPart | None = None
    current: DigitalPart | None = None
    recorded: dict[str, Trajectory] = field(default_factory=dict)
    excluded: dict[str, set[Strategy]] = field(default_factory=lambda: defaultdict(set))
    connect_order: list[str] = field(default_factory=list)
    finished: bool = False
    failed: bool = False

    def event(
        self,
        entity: str,
        event: EventType,
        part: DigitalPart | None = None,
        pose: Pose | None = None,
        detail: str | None = None,
    ) -> TraceEvent:
        return TraceEvent(
            tick=self.tick,
            entity=entity,
            event=event,
            part=part.instance_name if part is not None else None,
            pose=TracePose.of(pose) if pose is not None else None,
            detail=detail,
        )

    def fail(self, reason: str) -> TraceEvent:
        self.finished = True
        self.failed = True
        logger.warning("Simulation failed at tick %d: %s", self.tick, reason)
        return self.event("cell", EventType.FAIL, detail=reason)

    def obstacles(self) -> list[Obstacle]:
        """Static cell geometry plus every assembled part, sorted by id."""
        parts = [(p.instance_name, p.target_box()) for p in self.twin.parts if p.assembled]
        return sorted(self.static_obstacles + parts, key=lambda o: o[0])

    def pick_pose(self, part: DigitalPart) -> Pose:
        return drop_pose(self.geometry, part)


def drop_pose(geometry: CellGeometry, part: DigitalPart) -> Pose:
    """Where a part rests in the drop zone, unrotated."""
    return Pose(Point3.of(geometry.drop_zone) + Point3(0.0, part.half_extents.y, 0.0))


def place_targets(twin: DigitalTwin, geometry: CellGeometry) -> None:
    """Resolve target poses so the assembly rests on the station surface."""
    resolve_assembly(twin)
    floor = min(p.target_box().min.y for p in twin.parts)
    sx, _, sz = geometry.station.position
    resolve_assembly(twin, Point3(sx, geometry.station.surface_height - floor, sz))


def new_state(
    twin: DigitalTwin,
    geometry: CellGeometry,
    settings: Settings,
    mode: Mode,
    *,
    tick: int = 0,
    recorded: dict[str, Trajectory] | None = None,
    queue: list[DigitalPart] | None = None,
) -> SimState:
    twin.reset_state()
    return SimState(
        twin=twin,
        geometry=geometry,
        settings=settings,
        mode=mode,
        arm=RobotArm(Pose(Point3.of(geometry.robot_home))),
        mobile=MobileRobot(Point3.of(geometry.mobile_home), queue=deque(queue or [])),
        buffers=[Buffer.from_spec(b) for b in geometry.buffers],
        envelope=geometry.arm_envelope.build(),
        static_obstacles=[(STATION_ID, geometry.station.surface_box())],
        tick=tick,
        recorded=dict(recorded or {}),
    )


# -- Mobile robot ----------------------------------------------------------------


def mobile_step(state: SimState) -> list[TraceEvent]:
    """Advance the delivery route by one tick."""
    m = state.mobile
    if m.halted:
        return []
    speed = state.geometry.speeds.mobile

    if m.phase is MobilePhase.IDLE:
        if not m.queue:
            return []
        part = m.queue[0]
        buffer = next(
            (b for b in state.buffers if b.type_name == part.type_name and b.count > 0), None
        )
        if buffer is None:
            m.halted = True
            return [
                state.event("mobile", EventType.STARVATION, part, detail=part.type_name),
                state.fail(f"starvation: no buffer holds '{part.type_name}'"),
            ]
        m.queue.popleft()
        m.errand, m.buffer, m.destination = part, buffer, buffer.peek()
        m.phase = MobilePhase.TO_BUFFER

    if m.phase is MobilePhase.TO_BUFFER:
        if m.travel(speed):
            m.phase = MobilePhase.PICKING
        return []

    if m.phase is MobilePhase.PICKING:
        assert m.errand is not None and m.buffer is not None
        part = m.errand
        slot = buffer_give_part(m.buffer, part.type_name)
        if slot is None:
            m.halted = True
            return [
                state.event("mobile", EventType.STARVATION, part, detail=part.type_name),
                state.fail(f"starvation: buffer '{m.buffer.id}' ran out"),
            ]
        part.pose = Pose(slot + Point3(0.0, part.half_extents.y, 0.0))
        m.carried = part
        m.destination = Point3.of(state.geometry.drop_zone)
        m.phase = MobilePhase.TO_STATION
        return [state.event("mobile", EventType.PICK, part, part.pose, detail=m.buffer.id)]

    if m.phase is MobilePhase.TO_STATION:
        assert m.carried is not None
        arrived = m.travel(speed)
        m.carried.pose = Pose(m.position + Point3(0.0, m.carried.half_extents.y, 0.0))
        if arrived:
            m.phase = MobilePhase.DROPPING
        return []

    # Dropping: the drop zone holds one part at a time
    if state.drop_zone_part is not None:
        return []
    part = m.carried
    assert part is not None
    part.pose = state.pick_pose(part)
    part.delivered = True
    state.drop_zone_part = part
    m.carried = m.errand = m.buffer = m.destination = None
    m.phase = MobilePhase.IDLE
    return [state.event("mobile", EventType.DROP, part, part.pose)]


# -- Assembly arm ----------------------------------------------------------------


def _segment_started(state: SimState) -> list[TraceEvent]:
    arm = state.arm
    assert arm.trajectory is not None
    seg = arm.trajectory.segments[arm.segment]
    kind = EventType.MOVE if isinstance(seg, Translate) else EventType.ROTATE
    destination = arm.trajectory.pose_at(arm.segment, math.inf)
    detail = str(arm.strategy) if arm.task is ArmTask.CARRYING and arm.strategy else None
    return [state.event("arm", kind, arm.held, destination, detail)]


def _start_fetch(state: SimState, part: DigitalPart) -> list[TraceEvent]:
    arm = state.arm
    pick = state.pick_pose(part)
    if state.mode is Mode.VIRTUAL:
        part.pose = pick
    state.current = part
    height = safe_height(
        state.twin, state.static_obstacles, part.half_extents.y,
        state.settings.planner.clearance,
    )
    chain = SegmentChain(arm.pose)
    chain.move(arm.pose.position.x, height, arm.pose.position.z)
    chain.move(pick.position.x, height, pick.position.z)
    chain.turn(IDENTITY)
    chain.move(*pick.position.as_tuple())
    arm.start(chain.build(), ArmTask.FETCHING)
    if not arm.trajectory.segments:
        return _arrive(state)
    return _segment_started(state)


def _start_carry(state: SimState, part: DigitalPart) -> list[TraceEvent]:
    arm = state.arm
    obstacles = state.obstacles()
    cfg = state.settings
    events: list[TraceEvent] = []
    try:
        if state.mode is Mode.VIRTUAL:
            trajectory = plan_assembly_path(
                state.twin, part, obstacles,
                start=arm.pose, exclude=state.excluded[part.instance_name],
                planner=cfg.planner, collision=cfg.collision,
            )
        else:
            trajectory = state.recorded.get(part.instance_name)
            reusable = (
                trajectory is not None
                and trajectory.start == arm.pose
                and sweep_check(
                    part.half_extents, trajectory, obstacles,
                    cfg.collision.sweep_step, cfg.collision.contact_tolerance,
                    envelope=state.envelope,
                ) is None
            )
            if not reusable:
                had_recording = trajectory is not None
                trajectory = plan_assembly_path(
                    state.twin, part, obstacles,
                    start=arm.pose, envelope=state.envelope,
                    planner=cfg.planner, collision=cfg.collision,
                )
                if had_recording:
                    events.append(
                        state.event("arm", EventType.REPLAN, part, detail=str(trajectory.strategy))
                    )
    except PlanningError as exc:
        return [state.fail(f"planning: {exc}")]
    assert trajectory is not None
    arm.start(trajectory, ArmTask.CARRYING)
    arm.approach = trajectory
    return events + _segment_started(state)


def _arrive(state: SimState) -> list[TraceEvent]:
    """The current trajectory is complete."""
    arm = state.arm
    if arm.task is ArmTask.FETCHING:
        part = state.current
        assert part is not None
        arm.held = part
        part.pose = arm.pose
        if state.drop_zone_part is part:
            state.drop_zone_part = None
        arm.clear()
        return _start_carry(state, part)

    part = arm.held
    assert part is not None and part.target is not None and arm.approach is not None
    gap = arm.pose.position.distance(part.target.position)
    if gap > RESIDUAL_TOLERANCE:
        logger.warning("'%s' connected %.3g away from its target", part.instance_name, gap)
    part.pose = part.target
    part.assembled = True
    strategy = arm.approach.strategy
    state.recorded[part.instance_name] = arm.approach
    state.connect_order.append(part.instance_name)
    arm.held = None
    arm.clear()
    state.current = None
    return [state.event("arm", EventType.CONNECT, part, part.target, str(strategy))]


def _collide(state: SimState, pose: Pose, obstacle_id: str, body: str) -> list[TraceEvent]:
    """Stop short of the collision, retreat along the executed approach and replan."""
    arm = state.arm
    part = arm.held
    approach = arm.approach
    assert part is not None and approach is not None and approach.strategy is not None
    events = [
        state.event(
            "arm", EventType.COLLISION, part, pose,
            detail=f"{approach.strategy}:{obstacle_id}:{body}",
        )
    ]
    state.excluded[part.instance_name].add(approach.strategy)
    executed = approach.prefix(arm.segment - arm.unchecked_segments, arm.progress)
    retreat = executed.reversed()
    try:
        replanned = plan_assembly_path(
            state.twin, part, state.obstacles(),
            start=approach.start, exclude=state.excluded[part.instance_name],
            planner=state.settings.planner, collision=state.settings.collision,
        )
    except PlanningError as exc:
        events.append(state.fail(f"planning: {exc}"))
        return events
    events.append(state.event("arm", EventType.REPLAN, part, detail=str(replanned.strategy)))
    arm.start(retreat.then(replanned), ArmTask.CARRYING, unchecked=len(retreat.segments))
    arm.approach = replanned
    return events + _segment_started(state)


def _advance(state: SimState) -> list[TraceEvent]:
    arm = state.arm
    trajectory = arm.trajectory
    assert trajectory is not None
    seg = trajectory.segments[arm.segment]
    speeds = state.geometry.speeds
    if isinstance(seg, Translate):
        total, speed = seg.length, speeds.arm_linear
    else:
        total, speed = seg.angle, speeds.arm_angular
    progress = min(arm.progress + speed, total)
    pose = trajectory.pose_at(arm.segment, progress)

    held = arm.held
    checked = arm.task is ArmTask.CARRYING and arm.segment >= arm.unchecked_segments
    if state.mode is Mode.VIRTUAL and checked and held is not None:
        below = trajectory.strategy is Strategy.UP
        bodies = body_boxes(held.half_extents, pose, state.envelope, below)
        hit = first_hit(bodies, state.obstacles(), state.settings.collision.contact_tolerance)
        if hit is not None:
            return _collide(state, pose, *hit)

    arm.pose = pose
    arm.progress = progress
    if held is not None:
        held.pose = pose
    if progress < total:
        return []
    arm.segment += 1
    arm.progress = 0.0
    if arm.segment >= len(trajectory.segments):
        return _arrive(state)
    return _segment_started(state)


def tick(state: SimState) -> list[TraceEvent]:
    """One cycle of the assembly arm."""
    if state.finished:
        return []
    if state.arm.trajectory is not None:
        return _advance(state)

    part = next_unassembled_part(state.twin)
    if part is None:
        state.finished = True
        return [state.event("cell", EventType.DONE, detail=str(state.mode))]
    if state.mode is Mode.PHYSICAL and not part.delivered:
        return [state.event("arm", EventType.PAUSED, part)]
    return _start_fetch(state, part)


def step(state: SimState) -> list[TraceEvent]:
    """Mobile robot (physical mode) then arm, for one tick."""
    events: list[TraceEvent] = []
    if state.mode is Mode.PHYSICAL:
        events += mobile_step(state)
    if not state.finished:
        events += tick(state)
    return events


Observer = Callable[[SimState, list[TraceEvent]], None]


def run_simulation(
    twin: DigitalTwin,
    geometry: CellGeometry,
    mode: Mode | str,
    settings: Settings | None = None,
    *,
    observer: Observer | None = None,
) -> Trace:
    """Run virtual, physical or both phases until done, failure or the tick budget."""
    mode = Mode(mode)
    settings = settings or get_settings()
    trace = Trace()
    if not twin.parts:
        trace.events.append(
            TraceEvent(tick=0, entity="cell", event=EventType.DONE, detail=str(mode))
        )
        return trace
    if mode is not Mode.VIRTUAL:
        geometry.check_physical(p.type_name for p in twin.parts)

    place_targets(twin, geometry)
    phases = [Mode.VIRTUAL, Mode.PHYSICAL] if mode is Mode.BOTH else [mode]
    budget = settings.simulation.tick_budget
    tick_no = 0
    recorded: dict[str, Trajectory] = {}
    order: list[str] | None = None

    for phase in phases:
        if phase is Mode.PHYSICAL:
            queue = (
                [twin.part(n) for n in order] if order is not None else plan_sequence(twin)
            )
        else:
            queue = []
        state = new_state(
            twin, geometry, settings, phase, tick=tick_no, recorded=recorded, queue=queue
        )
        logger.info("Starting %s phase at tick %d", phase, tick_no)
        while not state.finished:
            if state.tick >= budget:
                trace.events.append(state.fail("timeout"))
                break
            events = step(state)
            trace.events.extend(events)
            if observer is not None:
                observer(state, events)
            state.tick += 1
        trace.final_poses[str(phase)] = {p.instance_name: p.pose for p in twin.parts}
        trace.connect_order[str(phase)] = list(state.connect_order)
        logger.info("Finished %s phase at tick %d", phase, state.tick)
        if state.failed:
            trace.failed = True
            break
        tick_no = state.tick
        recorded = state.recorded
        order = state.connect_order
    return trace

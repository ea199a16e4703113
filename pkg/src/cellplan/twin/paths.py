"""Assembly path planning: candidate approach trajectories checked by swept boxes."""

from __future__ import annotations

import logging
from collections.abc import Collection, Sequence

from cellplan.config.models import CollisionConfig, PlannerConfig
from cellplan.errors import PlanningError
from cellplan.geom.boxes import (
    Aabb,
    ArmEnvelope,
    CollisionReport,
    Obstacle,
    aabb_at,
    aabbs_intersect,
    sweep_check,
)
from cellplan.geom.path import DEFAULT_ORDER, SegmentChain, Strategy, Trajectory
from cellplan.geom.vectors import IDENTITY, Point3, Pose
from cellplan.twin.assembly import get_connection_point
from cellplan.twin.models import DigitalPart, DigitalTwin

logger = logging.getLogger("cellplan.twin.paths")


def safe_height(
    twin: DigitalTwin, obstacles: Sequence[Obstacle], part_half_height: float, clearance: float
) -> float:
    """Travel height for a part's center: its underside clears every box by ``clearance``."""
    tops = [p.target_box().max.y for p in twin.parts if p.target is not None]
    tops += [box.max.y for _, box in obstacles]
    return max(tops, default=0.0) + clearance + part_half_height


def build_candidate(
    strategy: Strategy,
    start: Pose,
    target: Pose,
    half_extents: Point3,
    height: float,
    config: PlannerConfig,
    obstacles: Sequence[Obstacle] = (),
) -> Trajectory:
    """Approach trajectory for one strategy.

    Every candidate lifts straight up to ``height``, travels level, turns to
    the target orientation there, and only then approaches. ``half_extents``
    are the world-aligned half extents at the target orientation.
    ``obstacles`` only shape the ``up`` candidate, which drops beside
    everything hanging over the target.
    """
    tx, ty, tz = target.position.as_tuple()
    side = 2 * half_extents.x + config.lateral_margin
    chain = SegmentChain(start)
    chain.move(start.position.x, height, start.position.z)

    if strategy is Strategy.DOWN:
        chain.move(tx, height, tz).turn(target.orientation).move(tx, ty, tz)
    elif strategy in (Strategy.LATERAL_NEG_X, Strategy.LATERAL_POS_X):
        # Moving along -x means staging on the +x side, and vice versa
        sx = tx + side if strategy is Strategy.LATERAL_NEG_X else tx - side
        chain.move(sx, height, tz).turn(target.orientation).move(sx, ty, tz).move(tx, ty, tz)
    else:
        under = ty - (2 * half_extents.y + config.under_margin)
        sx = _underpass_x(target, half_extents, under, height, obstacles, config)
        chain.move(sx, height, tz).turn(target.orientation).move(sx, under, tz)
        chain.move(tx, under, tz).move(tx, ty, tz)
    return chain.build(strategy)


def _underpass_x(
    target: Pose,
    half_extents: Point3,
    under: float,
    height: float,
    obstacles: Sequence[Obstacle],
    config: PlannerConfig,
) -> float:
    """Staging x for the ``up`` candidate.

    Staging clears the x-extent of every box above the target footprint by
    ``lateral_margin``. The -x side is used unless its drop and pass underneath
    are blocked while the +x side is clear.
    """
    tx, ty, tz = target.position.as_tuple()
    h = half_extents
    bottom = ty - h.y
    overhead = [
        box
        for _, box in obstacles
        if box.min.y >= bottom
        and box.min.x < tx + h.x and box.max.x > tx - h.x
        and box.min.z < tz + h.z and box.max.z > tz - h.z
    ]
    reach = h.x + config.lateral_margin
    neg = min([tx - (2 * h.x + config.lateral_margin)] + [b.min.x - reach for b in overhead])
    pos = max([tx + (2 * h.x + config.lateral_margin)] + [b.max.x + reach for b in overhead])

    def clear(sx: float) -> bool:
        drop = Aabb.from_bounds(
            Point3(sx - h.x, under - h.y, tz - h.z), Point3(sx + h.x, height + h.y, tz + h.z)
        )
        corridor = Aabb.from_bounds(
            Point3(min(sx, tx) - h.x, under - h.y, tz - h.z),
            Point3(max(sx, tx) + h.x, under + h.y, tz + h.z),
        )
        return not any(
            aabbs_intersect(body, box, 0.0) for _, box in obstacles for body in (drop, corridor)
        )

    if clear(neg) or not clear(pos):
        return neg
    return pos


def strategy_order(twin: DigitalTwin, part: DigitalPart) -> list[Strategy]:
    """Default order, with ``up`` first when the mating point sits below its partner's center."""
    order = list(DEFAULT_ORDER)
    for c in twin.connections_of(part):
        partner, partner_point, _ = c.other(part)
        if not partner.assembled or partner.target is None:
            continue
        mate = get_connection_point(partner, partner_point, at_target=True)
        if mate.y < partner.target.position.y:
            order.remove(Strategy.UP)
            order.insert(0, Strategy.UP)
        break
    return order


def plan_assembly_path(
    twin: DigitalTwin,
    part: DigitalPart,
    obstacles: Sequence[Obstacle],
    *,
    start: Pose | None = None,
    exclude: Collection[Strategy] = (),
    envelope: ArmEnvelope | None = None,
    planner: PlannerConfig | None = None,
    collision: CollisionConfig | None = None,
) -> Trajectory:
    """First collision-free candidate in strategy order.

    ``start`` defaults to straight above the target at safe height, unrotated.
    Raises ``PlanningError`` with every candidate's collision report when all fail.
    """
    planner = planner or PlannerConfig()
    collision = collision or CollisionConfig()
    if part.target is None:
        raise ValueError(f"Part '{part.instance_name}' has no resolved target pose")
    world_half = aabb_at(part.half_extents, part.target).half_extents
    lift = max(world_half.y, part.half_extents.y)
    height = safe_height(twin, obstacles, lift, planner.clearance)
    if start is None:
        tp = part.target.position
        start = Pose(Point3(tp.x, height, tp.z), IDENTITY)

    reports: list[CollisionReport] = []
    for strategy in strategy_order(twin, part):
        if strategy in exclude:
            continue
        candidate = build_candidate(
            strategy, start, part.target, world_half, height, planner, obstacles
        )
        report = sweep_check(
            part.half_extents,
            candidate,
            obstacles,
            collision.sweep_step,
            collision.contact_tolerance,
            envelope=envelope,
        )
        if report is None:
            logger.debug("Planned '%s' with strategy %s", part.instance_name, strategy)
            return candidate
        logger.debug(
            "Strategy %s for '%s' blocked by %s (%s)",
            strategy, part.instance_name, report.obstacle_id, report.body,
        )
        reports.append(report)
    raise PlanningError(part.instance_name, reports)

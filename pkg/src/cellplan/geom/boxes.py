"""Axis-aligned bounding boxes and swept collision checks."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from cellplan.errors import InvalidGeometryError
from cellplan.geom.path import Strategy, Trajectory
from cellplan.geom.vectors import Point3, Pose, rotation_matrix

logger = logging.getLogger("cellplan.geom.boxes")


@dataclass(frozen=True, slots=True)
class Aabb:
    center: Point3
    half_extents: Point3

    def __post_init__(self) -> None:
        h = self.half_extents
        if min(h.x, h.y, h.z) <= 0:
            raise InvalidGeometryError(f"Half extents must be positive, got {h.as_tuple()}")

    @classmethod
    def from_bounds(cls, lo: Point3, hi: Point3) -> Aabb:
        return cls((lo + hi) * 0.5, (hi - lo) * 0.5)

    @property
    def min(self) -> Point3:
        return self.center - self.half_extents

    @property
    def max(self) -> Point3:
        return self.center + self.half_extents


Obstacle = tuple[str, Aabb]


def aabb_hull(boxes: Iterable[Aabb]) -> Aabb:
    """Smallest box enclosing every box in ``boxes``."""
    corners = np.array([(*b.min.as_tuple(), *b.max.as_tuple()) for b in boxes])
    lo = Point3.of(corners[:, :3].min(axis=0))
    hi = Point3.of(corners[:, 3:].max(axis=0))
    return Aabb.from_bounds(lo, hi)


def aabb_at(half_extents: Point3, pose: Pose) -> Aabb:
    """Axis-aligned hull of a box with ``half_extents`` placed at ``pose``."""
    h = half_extents
    if min(h.x, h.y, h.z) <= 0:
        raise InvalidGeometryError(f"Half extents must be positive, got {h.as_tuple()}")
    if pose.orientation.is_identity:
        return Aabb(pose.position, h)
    hull = np.abs(rotation_matrix(pose.orientation)) @ h.as_array()
    return Aabb(pose.position, Point3.of(hull))


def aabbs_intersect(a: Aabb, b: Aabb, contact_tolerance: float) -> bool:
    """True iff the boxes overlap by more than ``contact_tolerance`` on every axis."""
    ac, ah, bc, bh = a.center, a.half_extents, b.center, b.half_extents
    for ca, ha, cb, hb in (
        (ac.x, ah.x, bc.x, bh.x),
        (ac.y, ah.y, bc.y, bh.y),
        (ac.z, ah.z, bc.z, bh.z),
    ):
        overlap = min(ca + ha, cb + hb) - max(ca - ha, cb - hb)
        if overlap <= contact_tolerance:
            return False
    return True


@dataclass(frozen=True, slots=True)
class ArmEnvelope:
    """Gantry proxy: a square column attached to the held part's box."""

    half_width: float
    height: float

    def __post_init__(self) -> None:
        if self.half_width <= 0 or self.height <= 0:
            raise InvalidGeometryError(
                f"Arm envelope must be positive, got ({self.half_width}, {self.height})"
            )

    def box_for(self, part_box: Aabb, below: bool = False) -> Aabb:
        """Column above the part box, or below it when the arm pushes upward."""
        half_h = self.height / 2
        if below:
            cy = part_box.min.y - half_h
        else:
            cy = part_box.max.y + half_h
        center = Point3(part_box.center.x, cy, part_box.center.z)
        return Aabb(center, Point3(self.half_width, half_h, self.half_width))


@dataclass(frozen=True, slots=True)
class CollisionReport:
    segment_index: int
    sample_pose: Pose
    obstacle_id: str
    body: str = "part"  # "part" or "arm"
    strategy: Strategy | None = None


def body_boxes(
    half_extents: Point3, pose: Pose, envelope: ArmEnvelope | None, below: bool
) -> list[tuple[str, Aabb]]:
    """Boxes of the moving bodies at ``pose``: the part, then the arm column if any."""
    part = aabb_at(half_extents, pose)
    bodies = [("part", part)]
    if envelope is not None:
        bodies.append(("arm", envelope.box_for(part, below=below)))
    return bodies


def first_hit(
    bodies: Sequence[tuple[str, Aabb]],
    obstacles: Iterable[Obstacle],
    contact_tolerance: float,
) -> tuple[str, str] | None:
    """First ``(obstacle_id, body)`` pair in obstacle-id order that collides."""
    for obstacle_id, box in obstacles:
        for body, body_box in bodies:
            if aabbs_intersect(body_box, box, contact_tolerance):
                return obstacle_id, body
    return None


def sweep_check(
    moving_half_extents: Point3,
    path: Trajectory,
    obstacles: Sequence[Obstacle],
    step: float,
    contact_tolerance: float,
    *,
    envelope: ArmEnvelope | None = None,
) -> CollisionReport | None:
    """First collision along ``path`` in sample order, or ``None``.

    Obstacles are checked in ascending id order, so among simultaneous
    collisions at one sample the lowest id is reported.
    """
    if contact_tolerance < 0:
        raise ValueError(f"contact_tolerance must be >= 0, got {contact_tolerance}")
    if not obstacles:
        return None
    ordered = sorted(obstacles, key=lambda o: o[0])
    below = path.strategy is Strategy.UP

    samples: dict[int, list[tuple[Pose, list[tuple[str, Aabb]]]]] = {}
    for index, pose in path.samples(step, moving_half_extents):
        bodies = body_boxes(moving_half_extents, pose, envelope, below)
        samples.setdefault(index, []).append((pose, bodies))

    for index, group in samples.items():
        # Broad phase: the hull of every sampled body box along this segment
        hull = aabb_hull(box for _, bodies in group for _, box in bodies)
        near = [o for o in ordered if aabbs_intersect(hull, o[1], contact_tolerance)]
        if not near:
            continue
        for pose, bodies in group:
            hit = first_hit(bodies, near, contact_tolerance)
            if hit is not None:
                obstacle_id, body = hit
                logger.debug(
                    "Collision on segment %d with %s (%s, %s)",
                    index, obstacle_id, body, path.strategy,
                )
                return CollisionReport(index, pose, obstacle_id, body, path.strategy)
    return None

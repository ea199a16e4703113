"""Vector and pose arithmetic, bounding boxes and swept collision checks."""

from cellplan.geom.boxes import (
    Aabb,
    ArmEnvelope,
    CollisionReport,
    Obstacle,
    aabb_at,
    aabb_hull,
    aabbs_intersect,
    sweep_check,
)
from cellplan.geom.path import Rotate, Segment, Strategy, Trajectory, Translate
from cellplan.geom.vectors import Orientation, Point3, Pose, rotate_point

__all__ = [
    "Aabb",
    "ArmEnvelope",
    "CollisionReport",
    "Obstacle",
    "Orientation",
    "Point3",
    "Pose",
    "Rotate",
    "Segment",
    "Strategy",
    "Trajectory",
    "Translate",
    "aabb_at",
    "aabb_hull",
    "aabbs_intersect",
    "rotate_point",
    "sweep_check",
]

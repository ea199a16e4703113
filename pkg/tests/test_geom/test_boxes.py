"""Tests for bounding boxes and swept collision checks."""

from __future__ import annotations

import pytest

from cellplan.errors import InvalidGeometryError
from cellplan.geom.boxes import (
    Aabb,
    ArmEnvelope,
    aabb_at,
    aabb_hull,
    aabbs_intersect,
    body_boxes,
    first_hit,
    sweep_check,
)
from cellplan.geom.path import SegmentChain, Strategy, Trajectory
from cellplan.geom.vectors import Orientation, Point3, Pose

UNIT = Point3(0.5, 0.5, 0.5)
TOL = 1e-3
STATION = Aabb(Point3(0, -0.1, 0), Point3(5, 0.1, 5))


def _box(x: float, y: float, z: float, h: float = 0.5) -> Aabb:
    return Aabb(Point3(x, y, z), Point3(h, h, h))


def _slide(y: float, strategy: Strategy | None = None) -> Trajectory:
    """Unit cube sliding along x from -5 to 5 at height ``y``."""
    return SegmentChain(Pose(Point3(-5, y, 0))).move(5, y, 0).build(strategy)


class TestAabb:
    def test_bounds(self):
        box = Aabb.from_bounds(Point3(0, 0, 0), Point3(2, 4, 6))
        assert box.center == Point3(1, 2, 3)
        assert box.half_extents == Point3(1, 2, 3)
        assert box.min == Point3(0, 0, 0)
        assert box.max == Point3(2, 4, 6)

    def test_rejects_flat_box(self):
        with pytest.raises(InvalidGeometryError):
            Aabb(Point3(), Point3(1, 0, 1))

    def test_hull(self):
        hull = aabb_hull([_box(0, 0, 0), _box(3, 1, -2)])
        assert hull.min.as_tuple() == (-0.5, -0.5, -2.5)
        assert hull.max.as_tuple() == (3.5, 1.5, 0.5)

    def test_aabb_at_identity(self):
        box = aabb_at(Point3(1, 2, 3), Pose(Point3(5, 5, 5)))
        assert box == Aabb(Point3(5, 5, 5), Point3(1, 2, 3))

    def test_aabb_at_quarter_yaw_swaps_x_and_z(self):
        box = aabb_at(Point3(1, 2, 3), Pose(Point3(), Orientation(90, 0)))
        assert box.half_extents.as_tuple() == pytest.approx((3.0, 2.0, 1.0))

    def test_aabb_at_diagonal_grows(self):
        box = aabb_at(Point3(1, 1, 1), Pose(Point3(), Orientation(45, 0)))
        assert box.half_extents.x == pytest.approx(2**0.5)
        assert box.half_extents.y == pytest.approx(1.0)


class TestIntersect:
    def test_overlap(self):
        assert aabbs_intersect(_box(0, 0, 0), _box(0.5, 0, 0), TOL)

    def test_face_contact_is_not_a_collision(self):
        assert not aabbs_intersect(_box(0, 0, 0), _box(1, 0, 0), TOL)

    def test_overlap_within_tolerance_is_contact(self):
        assert not aabbs_intersect(_box(0, 0, 0), _box(0.9995, 0, 0), TOL)
        assert aabbs_intersect(_box(0, 0, 0), _box(0.99, 0, 0), TOL)

    def test_separated_on_one_axis(self):
        assert not aabbs_intersect(_box(0, 0, 0), _box(0.2, 0.2, 3), TOL)

    def test_symmetric(self):
        a, b = _box(0, 0, 0), _box(0.7, -0.3, 0.1, h=0.25)
        assert aabbs_intersect(a, b, TOL) == aabbs_intersect(b, a, TOL)


class TestArmEnvelope:
    def test_column_above(self):
        column = ArmEnvelope(0.15, 1.0).box_for(_box(0, 0, 0))
        assert column.min.y == pytest.approx(0.5)
        assert column.max.y == pytest.approx(1.5)
        assert column.half_extents.x == 0.15

    def test_column_below(self):
        column = ArmEnvelope(0.15, 1.0).box_for(_box(0, 0, 0), below=True)
        assert column.max.y == pytest.approx(-0.5)

    def test_rejects_non_positive(self):
        with pytest.raises(InvalidGeometryError):
            ArmEnvelope(0, 1)

    def test_body_boxes(self):
        bodies = body_boxes(UNIT, Pose(), ArmEnvelope(0.1, 1), below=False)
        assert [name for name, _ in bodies] == ["part", "arm"]
        assert [name for name, _ in body_boxes(UNIT, Pose(), None, False)] == ["part"]


class TestSweepCheck:
    def test_clear_path(self):
        assert sweep_check(UNIT, _slide(3.0), [("block", _box(0, 0.5, 0))], 0.05, TOL) is None

    def test_reports_first_collision(self):
        report = sweep_check(
            UNIT, _slide(0.5, Strategy.DOWN), [("block", _box(0, 0.5, 0))], 0.05, TOL
        )
        assert report is not None
        assert report.obstacle_id == "block"
        assert report.body == "part"
        assert report.strategy is Strategy.DOWN
        assert report.segment_index == 0
        # First sample where the boxes overlap by more than the tolerance
        assert report.sample_pose.position.x == pytest.approx(-0.95)

    def test_lowest_id_wins_at_the_same_sample(self):
        obstacles = [("zeta", _box(0, 0.5, 0)), ("alpha", _box(0, 0.5, 0.2))]
        report = sweep_check(UNIT, _slide(0.5), obstacles, 0.05, TOL)
        assert report is not None
        assert report.obstacle_id == "alpha"

    def test_no_obstacles(self):
        assert sweep_check(UNIT, _slide(0.5), [], 0.05, TOL) is None

    def test_arm_column_collision(self):
        """The part passes under a ledge that only the arm column reaches."""
        ledge = [("ledge", _box(0, 2.0, 0))]
        assert sweep_check(UNIT, _slide(0.5), ledge, 0.05, TOL) is None
        report = sweep_check(UNIT, _slide(0.5), ledge, 0.05, TOL, envelope=ArmEnvelope(0.15, 1))
        assert report is not None
        assert report.body == "arm"

    def test_up_strategy_hangs_column_below(self):
        floor = [("floor", _box(0, -1.0, 0))]
        envelope = ArmEnvelope(0.15, 1)
        assert sweep_check(UNIT, _slide(0.5), floor, 0.05, TOL, envelope=envelope) is None
        report = sweep_check(UNIT, _slide(0.5, Strategy.UP), floor, 0.05, TOL, envelope=envelope)
        assert report is not None
        assert report.body == "arm"

    def test_rejects_negative_tolerance(self):
        with pytest.raises(ValueError):
            sweep_check(UNIT, _slide(0.5), [("b", _box(0, 0.5, 0))], 0.05, -1)

    @pytest.mark.parametrize(
        "path,obstacles",
        [
            (_slide(0.5), [("block", _box(0, 0.5, 0))]),
            (_slide(1.2), [("block", _box(0, 0.5, 0))]),
            (_slide(0.9), [("a", _box(-2, 0, 0)), ("b", _box(2, 0.5, 0, h=1.0))]),
            (
                SegmentChain(Pose(Point3(0, 6, 0))).move(0, 6, 3).move(0, 0.5, 3).build(),
                [("post", _box(0, 1, 3.8, h=0.4)), ("station", STATION)],
            ),
            (
                SegmentChain(Pose(Point3(-3, 0.5, 0)))
                .turn(Orientation(45, 0))
                .move(3, 0.5, 0)
                .build(),
                [("pillar", _box(0, 0.5, 1.1))],
            ),
        ],
    )
    def test_finer_sampling_agrees(self, path, obstacles):
        """A tenfold finer step finds the same first obstacle."""
        coarse = sweep_check(UNIT, path, obstacles, 0.05, TOL)
        fine = sweep_check(UNIT, path, obstacles, 0.005, TOL)
        assert (coarse is None) == (fine is None)
        if coarse is not None and fine is not None:
            assert coarse.obstacle_id == fine.obstacle_id
            assert coarse.segment_index == fine.segment_index


class TestFirstHit:
    def test_order_follows_obstacles(self):
        bodies = [("part", _box(0, 0, 0))]
        obstacles = [("a", _box(5, 5, 5)), ("b", _box(0.2, 0, 0)), ("c", _box(0, 0.2, 0))]
        assert first_hit(bodies, obstacles, TOL) == ("b", "part")

    def test_none(self):
        assert first_hit([("part", _box(0, 0, 0))], [("far", _box(9, 9, 9))], TOL) is None

"""Tests for buffers, the mobile robot and the arm."""

from __future__ import annotations

import pytest

from cellplan.cell import Buffer, MobileRobot, RobotArm, buffer_give_part
from cellplan.cell.resources import ArmTask
from cellplan.config.geometry import BufferSpec
from cellplan.geom.path import SegmentChain, Strategy
from cellplan.geom.vectors import Point3, Pose


@pytest.fixture
def bricks():
    spec = BufferSpec(
        id="bricks", type_name="Brick", position=(-10.0, 0.0, 2.0), slot_pitch=1.5,
        initial_count=3,
    )
    return Buffer.from_spec(spec)


class TestBuffer:
    def test_slots_along_x(self, bricks):
        assert bricks.count == 3
        assert list(bricks.slots) == [
            Point3(-10, 0, 2), Point3(-8.5, 0, 2), Point3(-7, 0, 2),
        ]
        assert bricks.peek() == Point3(-10, 0, 2)

    def test_give_in_order(self, bricks):
        assert buffer_give_part(bricks, "Brick") == Point3(-10, 0, 2)
        assert buffer_give_part(bricks, "Brick") == Point3(-8.5, 0, 2)
        assert bricks.count == 1

    def test_wrong_type(self, bricks):
        assert buffer_give_part(bricks, "Beam") is None
        assert bricks.count == 3

    def test_empty(self):
        empty = Buffer.from_spec(BufferSpec(id="e", type_name="Brick", position=(0, 0, 0)))
        assert empty.peek() is None
        assert buffer_give_part(empty, "Brick") is None

    def test_spec_rejects_negative_count(self):
        with pytest.raises(ValueError):
            BufferSpec(id="b", type_name="Brick", position=(0, 0, 0), initial_count=-1)


class TestMobileRobot:
    def test_travel_steps_then_snaps(self):
        robot = MobileRobot(Point3(0, 0, 0))
        robot.destination = Point3(1, 0, 0)
        assert not robot.travel(0.4)
        assert robot.position.x == pytest.approx(0.4)
        assert not robot.travel(0.4)
        assert robot.travel(0.4)
        assert robot.position == Point3(1, 0, 0)

    def test_already_there(self):
        robot = MobileRobot(Point3(2, 0, 2))
        robot.destination = Point3(2, 0, 2)
        assert robot.travel(0.1)


class TestRobotArm:
    def test_start_and_clear(self):
        arm = RobotArm(Pose(Point3(0, 5, 0)))
        path = SegmentChain(arm.pose).move(1, 5, 0).move(1, 1, 0).build(Strategy.DOWN)
        arm.start(path, ArmTask.CARRYING, unchecked=1)
        assert arm.strategy is Strategy.DOWN
        assert (arm.segment, arm.progress, arm.unchecked_segments) == (0, 0.0, 1)
        arm.clear()
        assert arm.trajectory is None
        assert arm.task is ArmTask.IDLE
        assert arm.strategy is None

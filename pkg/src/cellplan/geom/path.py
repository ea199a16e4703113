"""Trajectories: chains of translations and rotations with an approach strategy."""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

from cellplan.geom.vectors import Orientation, Point3, Pose

CHAIN_TOLERANCE = 1e-9


class Strategy(StrEnum):
    """Approach direction used to bring a part into its target pose."""

    DOWN = "down"
    LATERAL_NEG_X = "lateral_neg_x"
    LATERAL_POS_X = "lateral_pos_x"
    UP = "up"


DEFAULT_ORDER: tuple[Strategy, ...] = (
    Strategy.DOWN,
    Strategy.LATERAL_NEG_X,
    Strategy.LATERAL_POS_X,
    Strategy.UP,
)


def _shortest_delta(a: float, b: float) -> float:
    """Signed angular difference b - a in (-180, 180]."""
    d = math.fmod(b - a, 360.0)
    if d > 180.0:
        d -= 360.0
    elif d <= -180.0:
        d += 360.0
    return d


@dataclass(frozen=True, slots=True)
class Translate:
    start: Point3
    end: Point3

    @property
    def length(self) -> float:
        return self.start.distance(self.end)

    def at(self, s: float) -> Point3:
        """Position after travelling arc length ``s`` (clamped to the end)."""
        length = self.length
        if s <= 0.0:
            return self.start
        if s >= length:
            return self.end
        return self.start + (self.end - self.start) * (s / length)

    def reversed(self) -> Translate:
        return Translate(self.end, self.start)


@dataclass(frozen=True, slots=True)
class Rotate:
    start: Orientation
    end: Orientation

    @property
    def deltas(self) -> tuple[float, float]:
        return (
            _shortest_delta(self.start.yaw, self.end.yaw),
            _shortest_delta(self.start.pitch, self.end.pitch),
        )

    @property
    def angle(self) -> float:
        """Total turn in degrees."""
        return math.hypot(*self.deltas)

    def arc_length(self, half_extents: Point3) -> float:
        """Distance swept by the box corners: angle (rad) times the half-diagonal."""
        return math.radians(self.angle) * half_extents.norm()

    def at(self, degrees: float) -> Orientation:
        """Orientation after turning ``degrees`` along the shortest path."""
        angle = self.angle
        if degrees <= 0.0:
            return self.start
        if degrees >= angle:
            return self.end
        k = degrees / angle
        dyaw, dpitch = self.deltas
        return Orientation(self.start.yaw + dyaw * k, self.start.pitch + dpitch * k)

    def reversed(self) -> Rotate:
        return Rotate(self.end, self.start)


Segment = Translate | Rotate


@dataclass(frozen=True)
class Trajectory:
    """A continuous chain of motion segments starting at ``start``.

    ``strategy`` is ``None`` for transit and retreat motions that are not an
    assembly approach.
    """

    start: Pose
    segments: tuple[Segment, ...] = ()
    strategy: Strategy | None = None

    def __post_init__(self) -> None:
        pose = self.start
        for i, seg in enumerate(self.segments):
            if isinstance(seg, Translate):
                if seg.start.distance(pose.position) > CHAIN_TOLERANCE:
                    raise ValueError(f"Segment {i} does not start where segment {i - 1} ended")
                pose = pose.moved_to(seg.end)
            else:
                if _orientation_gap(seg.start, pose.orientation) > CHAIN_TOLERANCE:
                    raise ValueError(f"Segment {i} does not start at the current orientation")
                pose = pose.turned_to(seg.end)

    @cached_property
    def segment_starts(self) -> tuple[Pose, ...]:
        """Pose at the start of every segment."""
        starts = []
        pose = self.start
        for seg in self.segments:
            starts.append(pose)
            pose = pose.moved_to(seg.end) if isinstance(seg, Translate) else pose.turned_to(seg.end)
        return tuple(starts)

    @property
    def end(self) -> Pose:
        if not self.segments:
            return self.start
        last = self.segments[-1]
        pose = self.segment_starts[-1]
        return pose.moved_to(last.end) if isinstance(last, Translate) else pose.turned_to(last.end)

    def pose_at(self, index: int, progress: float) -> Pose:
        """Pose after ``progress`` along segment ``index``.

        Progress is arc length for translations and degrees for rotations.
        """
        seg = self.segments[index]
        base = self.segment_starts[index]
        if isinstance(seg, Translate):
            return base.moved_to(seg.at(progress))
        return base.turned_to(seg.at(progress))

    def samples(self, step: float, half_extents: Point3) -> Iterator[tuple[int, Pose]]:
        """Yield ``(segment_index, pose)`` at arc-length multiples of ``step``.

        Every segment contributes its endpoint; the trajectory start is yielded once.
        Halving ``step`` yields a superset of the sample positions.
        """
        if step <= 0:
            raise ValueError(f"step must be > 0, got {step}")
        if not self.segments:
            yield 0, self.start
            return
        yield 0, self.start
        radius = half_extents.norm()
        for i, seg in enumerate(self.segments):
            if isinstance(seg, Translate):
                total, unit = seg.length, step
            else:
                total = seg.angle
                unit = math.degrees(step / radius) if radius > 0 else total
            k = 1
            while k * unit < total:
                yield i, self.pose_at(i, k * unit)
                k += 1
            yield i, self.pose_at(i, total)

    def prefix(self, index: int, progress: float) -> Trajectory:
        """The executed part of this trajectory up to ``progress`` along segment ``index``."""
        segs: list[Segment] = list(self.segments[:index])
        seg = self.segments[index]
        if isinstance(seg, Translate):
            partial = Translate(seg.start, seg.at(progress))
            if partial.length > 0:
                segs.append(partial)
        else:
            partial_r = Rotate(seg.start, seg.at(progress))
            if partial_r.angle > 0:
                segs.append(partial_r)
        return Trajectory(self.start, tuple(segs), self.strategy)

    def reversed(self) -> Trajectory:
        """Retrace this trajectory back to its start."""
        segs = tuple(seg.reversed() for seg in reversed(self.segments))
        return Trajectory(self.end, segs, None)

    def then(self, other: Trajectory) -> Trajectory:
        """Concatenate, keeping the strategy of ``other``."""
        return Trajectory(self.start, self.segments + other.segments, other.strategy)


def _orientation_gap(a: Orientation, b: Orientation) -> float:
    return max(abs(_shortest_delta(a.yaw, b.yaw)), abs(_shortest_delta(a.pitch, b.pitch)))


class SegmentChain:
    """Accumulates segments from a pose, dropping zero-length moves."""

    def __init__(self, start: Pose) -> None:
        self.start = start
        self.pose = start
        self.segments: list[Segment] = []

    def move(self, x: float, y: float, z: float) -> SegmentChain:
        to = Point3(x, y, z)
        if to != self.pose.position:
            self.segments.append(Translate(self.pose.position, to))
            self.pose = self.pose.moved_to(to)
        return self

    def turn(self, orientation: Orientation) -> SegmentChain:
        seg = Rotate(self.pose.orientation, orientation)
        if seg.angle > 0:
            self.segments.append(seg)
            self.pose = self.pose.turned_to(orientation)
        return self

    def build(self, strategy: Strategy | None = None) -> Trajectory:
        return Trajectory(self.start, tuple(self.segments), strategy)

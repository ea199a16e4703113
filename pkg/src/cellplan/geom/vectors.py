"""Points, orientations and poses.

The height axis is ``y``. Orientations carry two rotary degrees of freedom:
yaw about the height axis, then pitch about the ``x`` axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from cellplan.errors import InvalidGeometryError


@dataclass(frozen=True, slots=True)
class Point3:
    """A finite point (or offset) in model units."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise InvalidGeometryError(f"Non-finite coordinate in ({self.x}, {self.y}, {self.z})")

    @classmethod
    def of(cls, values) -> Point3:
        """Build from any 3-sequence (tuple, list, numpy array)."""
        x, y, z = (float(v) for v in values)
        return cls(x, y, z)

    def __add__(self, other: Point3) -> Point3:
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Point3) -> Point3:
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, k: float) -> Point3:
        return Point3(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def __neg__(self) -> Point3:
        return Point3(-self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def distance(self, other: Point3) -> float:
        return (self - other).norm()

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def normalize_degrees(angle: float) -> float:
    """Map an angle into [0, 360)."""
    a = math.fmod(angle, 360.0)
    if a < 0:
        a += 360.0
    # fmod can return 360.0 after the shift for tiny negatives
    return 0.0 if a >= 360.0 else a + 0.0


@dataclass(frozen=True, slots=True)
class Orientation:
    """Yaw and pitch in degrees, each normalized to [0, 360)."""

    yaw: float = 0.0
    pitch: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.yaw) and math.isfinite(self.pitch)):
            raise InvalidGeometryError(f"Non-finite orientation ({self.yaw}, {self.pitch})")
        object.__setattr__(self, "yaw", normalize_degrees(self.yaw))
        object.__setattr__(self, "pitch", normalize_degrees(self.pitch))

    @classmethod
    def parse(cls, text: str) -> Orientation:
        """Parse the ``"yaw,pitch"`` attribute text."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"Orientation must be 'yaw,pitch', got {text!r}")
        try:
            yaw, pitch = (float(p) for p in parts)
        except ValueError:
            raise ValueError(f"Orientation must be 'yaw,pitch', got {text!r}") from None
        if not (math.isfinite(yaw) and math.isfinite(pitch)):
            raise ValueError(f"Orientation must be finite, got {text!r}")
        return cls(yaw, pitch)

    @property
    def is_identity(self) -> bool:
        return self.yaw == 0.0 and self.pitch == 0.0

    def __str__(self) -> str:
        return f"{_fmt(self.yaw)},{_fmt(self.pitch)}"


IDENTITY = Orientation()


@dataclass(frozen=True, slots=True)
class Pose:
    position: Point3 = field(default_factory=Point3)
    orientation: Orientation = field(default_factory=Orientation)

    def moved_to(self, position: Point3) -> Pose:
        return Pose(position, self.orientation)

    def turned_to(self, orientation: Orientation) -> Pose:
        return Pose(self.position, orientation)


def _fmt(v: float) -> str:
    return repr(v) if v != int(v) else str(int(v))


def _cos_sin(degrees: float) -> tuple[float, float]:
    """Cosine and sine, exact at quarter turns."""
    d = normalize_degrees(degrees)
    exact = {0.0: (1.0, 0.0), 90.0: (0.0, 1.0), 180.0: (-1.0, 0.0), 270.0: (0.0, -1.0)}
    if d in exact:
        return exact[d]
    r = math.radians(d)
    return math.cos(r), math.sin(r)


def rotation_matrix(o: Orientation) -> np.ndarray:
    """Matrix applying yaw about y, then pitch about x: ``Rx(pitch) @ Ry(yaw)``."""
    cy, sy = _cos_sin(o.yaw)
    cp, sp = _cos_sin(o.pitch)
    ry = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
    rx = np.array([[1.0, 0.0, 0.0], [0.0, cp, -sp], [0.0, sp, cp]])
    return rx @ ry


def rotate_point(p: Point3, o: Orientation) -> Point3:
    """Rotate ``p`` about the origin by ``o``."""
    if o.is_identity:
        return p
    return Point3.of(rotation_matrix(o) @ p.as_array())

"""Cell geometry manifest: part extents, buffers, station, speeds and arm envelope."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from cellplan.errors import GeometryManifestError, UnknownTypeError
from cellplan.geom.boxes import Aabb, ArmEnvelope
from cellplan.geom.vectors import Point3

logger = logging.getLogger("cellplan.config.geometry")

Vec3 = tuple[float, float, float]


class PartTypeGeometry(BaseModel):
    half_extents: Vec3

    @field_validator("half_extents")
    @classmethod
    def positive(cls, v: Vec3) -> Vec3:
        if min(v) <= 0:
            raise ValueError(f"half_extents must be positive, got {v}")
        return v


class BufferSpec(BaseModel):
    """A typed part buffer; slot ``i`` sits at ``position + i * slot_pitch`` along x."""

    id: str
    type_name: str
    position: Vec3
    slot_pitch: float = 1.0
    initial_count: int = 0

    @model_validator(mode="after")
    def validate_counts(self) -> BufferSpec:
        if self.initial_count < 0:
            raise ValueError(f"initial_count must be >= 0, got {self.initial_count}")
        if self.initial_count > 1 and self.slot_pitch <= 0:
            raise ValueError("slot_pitch must be > 0 when a buffer holds several parts")
        return self

    def pick_positions(self) -> list[Point3]:
        base = Point3.of(self.position)
        return [base + Point3(i * self.slot_pitch, 0.0, 0.0) for i in range(self.initial_count)]


class StationSpec(BaseModel):
    """Assembly station: the surface top is at ``surface_height``."""

    position: Vec3 = (0.0, 0.0, 0.0)
    surface_height: float = 0.0
    surface_half_extents: tuple[float, float] = (5.0, 5.0)  # x, z
    surface_thickness: float = 0.2

    @model_validator(mode="after")
    def validate_surface(self) -> StationSpec:
        if min(self.surface_half_extents) <= 0 or self.surface_thickness <= 0:
            raise ValueError("station surface extents must be positive")
        return self

    def surface_box(self) -> Aabb:
        hx, hz = self.surface_half_extents
        half_t = self.surface_thickness / 2
        center = Point3(self.position[0], self.surface_height - half_t, self.position[2])
        return Aabb(center, Point3(hx, half_t, hz))


class Speeds(BaseModel):
    arm_linear: float = 0.25  # units per tick
    arm_angular: float = 5.0  # degrees per tick
    mobile: float = 0.2  # units per tick

    @model_validator(mode="after")
    def validate_positive(self) -> Speeds:
        for name in ("arm_linear", "arm_angular", "mobile"):
            if getattr(self, name) <= 0:
                raise ValueError(f"speeds.{name} must be > 0, got {getattr(self, name)}")
        return self


class ArmEnvelopeSpec(BaseModel):
    half_width: float = 0.15
    height: float = 1.0

    @model_validator(mode="after")
    def validate_positive(self) -> ArmEnvelopeSpec:
        if self.half_width <= 0 or self.height <= 0:
            raise ValueError("arm_envelope dimensions must be > 0")
        return self

    def build(self) -> ArmEnvelope:
        return ArmEnvelope(self.half_width, self.height)


class CellGeometry(BaseModel):
    """Everything the cell needs to know about physical dimensions."""

    part_types: dict[str, PartTypeGeometry] = Field(default_factory=dict)
    buffers: list[BufferSpec] = Field(default_factory=list)
    station: StationSpec = Field(default_factory=StationSpec)
    robot_home: Vec3 = (0.0, 8.0, 0.0)
    mobile_home: Vec3 = (-8.0, 0.0, 8.0)
    drop_zone: Vec3 = (-8.0, 0.0, 0.0)
    speeds: Speeds = Field(default_factory=Speeds)
    arm_envelope: ArmEnvelopeSpec = Field(default_factory=ArmEnvelopeSpec)

    @model_validator(mode="after")
    def validate_buffers(self) -> CellGeometry:
        seen: set[str] = set()
        for buf in self.buffers:
            if buf.id in seen:
                raise ValueError(f"Duplicate buffer id '{buf.id}'")
            seen.add(buf.id)
        return self

    def half_extents(self, type_name: str) -> Point3:
        spec = self.part_types.get(type_name)
        if spec is None:
            raise UnknownTypeError(f"No extents for part type '{type_name}' in cell geometry")
        return Point3.of(spec.half_extents)

    def check_physical(self, type_names: Iterable[str]) -> None:
        """Every type needs a buffer before the physical phase can run."""
        stocked = {b.type_name for b in self.buffers}
        missing = sorted(set(type_names) - stocked)
        if missing:
            raise GeometryManifestError(f"No buffer for part types: {', '.join(missing)}")

    def with_overrides(self, overrides: dict[str, Any]) -> CellGeometry:
        """Apply dotted ``speeds.*`` / ``arm_envelope.*`` overrides and re-validate."""
        data = self.model_dump(mode="python")
        for key, value in overrides.items():
            section, _, field = key.partition(".")
            if section not in ("speeds", "arm_envelope") or field not in data[section]:
                raise KeyError(key)
            data[section][field] = value
        try:
            return CellGeometry.model_validate(data)
        except ValidationError as exc:
            raise ValueError(str(exc)) from None


def load_geometry(path: Path) -> CellGeometry:
    """Read and validate a geometry manifest (JSON)."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GeometryManifestError(f"{path}: invalid JSON ({exc})") from None
    try:
        geometry = CellGeometry.model_validate(raw)
    except ValidationError as exc:
        raise GeometryManifestError(f"{path}: {exc}") from None
    logger.debug("Loaded geometry for %d part types from %s", len(geometry.part_types), path)
    return geometry

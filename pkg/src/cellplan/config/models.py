"""Pydantic models for configuration sub-sections."""

from __future__ import annotations

from pydantic import BaseModel, model_validator

from cellplan.config.constants import (
    DEFAULT_CLEARANCE,
    DEFAULT_CONTACT_TOLERANCE,
    DEFAULT_LATERAL_MARGIN,
    DEFAULT_SWEEP_STEP,
    DEFAULT_TICK_BUDGET,
    DEFAULT_TICKS_PER_SECOND,
    DEFAULT_UNDER_MARGIN,
)


class CollisionConfig(BaseModel):
    """Swept bounding-box collision settings."""

    contact_tolerance: float = DEFAULT_CONTACT_TOLERANCE
    sweep_step: float = DEFAULT_SWEEP_STEP

    @model_validator(mode="after")
    def validate_ranges(self) -> CollisionConfig:
        if self.contact_tolerance < 0:
            raise ValueError(f"contact_tolerance must be >= 0, got {self.contact_tolerance}")
        if self.sweep_step <= 0:
            raise ValueError(f"sweep_step must be > 0, got {self.sweep_step}")
        return self


class PlannerConfig(BaseModel):
    """Candidate trajectory shapes for assembly path planning."""

    clearance: float = DEFAULT_CLEARANCE
    lateral_margin: float = DEFAULT_LATERAL_MARGIN
    under_margin: float = DEFAULT_UNDER_MARGIN
    plan_with_arm_envelope: bool = True  # used by `cellplan plan`

    @model_validator(mode="after")
    def validate_margins(self) -> PlannerConfig:
        for name in ("clearance", "lateral_margin", "under_margin"):
            value = getattr(self, name)
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
        return self


class SimulationConfig(BaseModel):
    """Tick loop settings."""

    tick_budget: int = DEFAULT_TICK_BUDGET
    ticks_per_second: int = DEFAULT_TICKS_PER_SECOND
    snapshot_every: int = 0  # 0 = snapshots only at connect events

    @model_validator(mode="after")
    def validate_counts(self) -> SimulationConfig:
        if self.tick_budget <= 0:
            raise ValueError(f"tick_budget must be > 0, got {self.tick_budget}")
        if self.ticks_per_second <= 0:
            raise ValueError(f"ticks_per_second must be > 0, got {self.ticks_per_second}")
        if self.snapshot_every < 0:
            raise ValueError(f"snapshot_every must be >= 0, got {self.snapshot_every}")
        return self

"""Paths and default values used across the project."""

from pathlib import Path

# Base directory for user-level cellplan data
CELLPLAN_HOME = Path.home() / ".cellplan"

CONFIG_DIR = CELLPLAN_HOME
CONFIG_FILE = CONFIG_DIR / "config.json"

# Collision defaults (model units)
DEFAULT_CONTACT_TOLERANCE = 1e-3
DEFAULT_SWEEP_STEP = 0.05

# Planner defaults
DEFAULT_CLEARANCE = 2.0
DEFAULT_LATERAL_MARGIN = 0.5
DEFAULT_UNDER_MARGIN = 0.5

# Simulation defaults
DEFAULT_TICK_BUDGET = 1_000_000
DEFAULT_TICKS_PER_SECOND = 50

# Presentation defaults for parts without color/orientation attributes
DEFAULT_COLOR = "gray"
DEFAULT_ORIENTATION = "0,0"

# Connection residual and surface-height tolerances
RESIDUAL_TOLERANCE = 1e-6
SURFACE_TOLERANCE = 1e-6

# Attributes that carry presentation metadata rather than coordinates
PRESENTATION_ATTRIBUTES = ("color", "orientation")

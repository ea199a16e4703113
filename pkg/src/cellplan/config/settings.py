"""Central settings, loaded from ~/.cellplan/config.json and environment variables."""

from __future__ import annotations

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from cellplan.config.constants import CELLPLAN_HOME, CONFIG_FILE
from cellplan.config.models import CollisionConfig, PlannerConfig, SimulationConfig
from cellplan.outputs import write_text

logger = logging.getLogger("cellplan.config.settings")


class Settings(BaseSettings):
    """All cellplan tuning in one place.

    Priority (highest → lowest):
      1. Environment variables (CELLPLAN_ prefix, ``__`` between nested keys)
      2. .env file
      3. ~/.cellplan/config.json
      4. Defaults defined here
    """

    model_config = SettingsConfigDict(
        env_prefix="CELLPLAN_",
        env_nested_delimiter="__",
        env_file=(".env", str(CELLPLAN_HOME / ".env")),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    collision: CollisionConfig = Field(default_factory=CollisionConfig)
    planner: PlannerConfig = Field(default_factory=PlannerConfig)
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)

    @model_validator(mode="before")
    @classmethod
    def load_config_file(cls, values: dict) -> dict:
        """Merge config.json values as defaults (env vars still override)."""
        if CONFIG_FILE.exists():
            try:
                file_data = json.loads(CONFIG_FILE.read_text(encoding="utf-8"))
                merged = {**file_data, **{k: v for k, v in values.items() if v is not None}}
                values = merged
            except (json.JSONDecodeError, OSError) as exc:
                logger.warning("Ignoring unreadable %s: %s", CONFIG_FILE, exc)
        return values

    def with_overrides(self, overrides: dict[str, Any]) -> Settings:
        """Return a copy with dotted ``section.field`` overrides applied and re-validated.

        Raises ``KeyError`` for unknown keys and ``ValueError`` for values the
        sub-config validators reject.
        """
        data = self.model_dump(mode="python")
        for key, value in overrides.items():
            section, _, field = key.partition(".")
            if section not in data or field not in data[section]:
                raise KeyError(key)
            data[section][field] = value
        try:
            return Settings.model_validate(data)
        except ValidationError as exc:
            raise ValueError(str(exc)) from None

    def save(self) -> Path:
        """Persist current settings to config.json."""
        data = self.model_dump(mode="json")
        path = write_text(CONFIG_FILE, json.dumps(data, indent=2) + "\n")
        logger.info("Saved settings to %s", path)
        return path

    @classmethod
    def config_exists(cls) -> bool:
        return CONFIG_FILE.exists()


@lru_cache
def get_settings() -> Settings:
    """Singleton settings instance."""
    return Settings()

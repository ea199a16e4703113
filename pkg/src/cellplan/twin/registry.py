"""Connection-point parameters keyed ``TypeName.paramName``."""

from __future__ import annotations

from cellplan.errors import MissingParameterError, RegistryConflictError
from cellplan.geom.vectors import Point3


class ParamRegistry:
    """Per-twin table of local connection points, shared by all parts of a type."""

    def __init__(self) -> None:
        self._points: dict[str, Point3] = {}

    @staticmethod
    def key(type_name: str, param_name: str) -> str:
        return f"{type_name}.{param_name}"

    def add(self, type_name: str, param_name: str, point: Point3) -> None:
        """Register a point; re-registering an equal value is a no-op."""
        key = self.key(type_name, param_name)
        existing = self._points.get(key)
        if existing is not None and existing != point:
            raise RegistryConflictError(
                f"Parameter '{key}' already set to {existing.as_tuple()}, got {point.as_tuple()}"
            )
        self._points[key] = point

    def get(self, key: str) -> Point3:
        try:
            return self._points[key]
        except KeyError:
            raise MissingParameterError(f"No parameter '{key}'") from None

    def lookup(self, type_name: str, param_name: str) -> Point3:
        return self.get(self.key(type_name, param_name))

    def __contains__(self, key: object) -> bool:
        return key in self._points

    def __len__(self) -> int:
        return len(self._points)

    def keys(self) -> list[str]:
        return list(self._points)

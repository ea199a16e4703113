"""Item records exchanged between the product description and the twin."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import StrEnum

from cellplan.errors import ItemStreamError
from cellplan.geom.vectors import Orientation


class ItemKind(StrEnum):
    PARAMETER = "parameter"
    CREATE = "create"
    CONNECTION = "connection"


ARITY = {ItemKind.PARAMETER: 5, ItemKind.CREATE: 4, ItemKind.CONNECTION: 4}
_KIND_RANK = {ItemKind.PARAMETER: 0, ItemKind.CREATE: 1, ItemKind.CONNECTION: 2}


def normalize_real(text: str) -> str:
    """Plain decimal text for a real: '.' separator, never an exponent."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ItemStreamError(f"Not a real number: {text!r}") from None
    if not value.is_finite():
        raise ItemStreamError(f"Not a finite real number: {text!r}")
    return format(value, "f")


@dataclass(frozen=True)
class Item:
    """One record: ``parameter``, ``create`` or ``connection`` with its string fields.

    parameter  → type_name, param_name, x, y, z
    create     → type_name, instance_name, color, orientation
    connection → instance_a, point_a, instance_b, point_b
    """

    kind: ItemKind
    fields: tuple[str, ...]

    def __post_init__(self) -> None:
        kind = ItemKind(self.kind)
        object.__setattr__(self, "kind", kind)
        fields = tuple(self.fields)
        if len(fields) != ARITY[kind]:
            raise ItemStreamError(
                f"{kind} takes {ARITY[kind]} fields, got {len(fields)}: {' '.join(fields)}"
            )
        for f in fields:
            if not f or any(ch.isspace() for ch in f):
                raise ItemStreamError(f"{kind} field {f!r} is empty or contains whitespace")
        if kind is ItemKind.PARAMETER:
            fields = fields[:2] + tuple(normalize_real(f) for f in fields[2:])
        elif kind is ItemKind.CREATE:
            try:
                Orientation.parse(fields[3])
            except ValueError as exc:
                raise ItemStreamError(str(exc)) from None
        object.__setattr__(self, "fields", fields)

    @classmethod
    def parameter(cls, type_name: str, param_name: str, x: str, y: str, z: str) -> Item:
        return cls(ItemKind.PARAMETER, (type_name, param_name, x, y, z))

    @classmethod
    def create(cls, type_name: str, instance_name: str, color: str, orientation: str) -> Item:
        return cls(ItemKind.CREATE, (type_name, instance_name, color, orientation))

    @classmethod
    def connection(cls, instance_a: str, point_a: str, instance_b: str, point_b: str) -> Item:
        return cls(ItemKind.CONNECTION, (instance_a, point_a, instance_b, point_b))

    @property
    def key(self) -> str:
        """Registry key of a parameter item."""
        return f"{self.fields[0]}.{self.fields[1]}"

    def coordinates(self) -> tuple[float, float, float]:
        x, y, z = (float(f) for f in self.fields[2:])
        return (x, y, z)


@dataclass(frozen=True)
class ItemStream:
    """Ordered items: all parameters, then creates, then connections.

    Construction checks that connections reference created instances and that
    every connection point has a parameter for the instance's type.
    """

    items: tuple[Item, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        self._check()

    @classmethod
    def from_unordered(cls, items: Iterable[Item]) -> ItemStream:
        """Stable-sort items into parameter → create → connection order."""
        return cls(tuple(sorted(items, key=lambda i: _KIND_RANK[i.kind])))

    def of_kind(self, kind: ItemKind) -> list[Item]:
        return [i for i in self.items if i.kind is kind]

    @property
    def parameters(self) -> list[Item]:
        return self.of_kind(ItemKind.PARAMETER)

    @property
    def creates(self) -> list[Item]:
        return self.of_kind(ItemKind.CREATE)

    @property
    def connections(self) -> list[Item]:
        return self.of_kind(ItemKind.CONNECTION)

    def __len__(self) -> int:
        return len(self.items)

    def _check(self) -> None:
        rank = 0
        params: set[str] = set()
        types: dict[str, str] = {}
        for item in self.items:
            r = _KIND_RANK[item.kind]
            if r < rank:
                fields = " ".join(item.fields)
                raise ItemStreamError(f"{item.kind} item after a later kind: {fields}")
            rank = r
            if item.kind is ItemKind.PARAMETER:
                params.add(item.key)
            elif item.kind is ItemKind.CREATE:
                type_name, instance = item.fields[0], item.fields[1]
                if instance in types:
                    raise ItemStreamError(f"Instance '{instance}' is created twice")
                types[instance] = type_name
            else:
                a, pa, b, pb = item.fields
                for instance, point in ((a, pa), (b, pb)):
                    if instance not in types:
                        raise ItemStreamError(
                            f"Connection references '{instance}' before it is created"
                        )
                    if f"{types[instance]}.{point}" not in params:
                        raise ItemStreamError(
                            f"Connection point '{point}' of '{instance}' has no parameter "
                            f"'{types[instance]}.{point}'"
                        )

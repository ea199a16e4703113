"""Immutable document model for the CAEX subset cellplan reads.

Source line numbers are carried for diagnostics but excluded from equality,
so a document reparsed from its own serialization compares equal.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field


@dataclass(frozen=True)
class AttributeDef:
    name: str
    data_type: str | None = None
    default_value: str | None = None
    value: str | None = None
    description: str | None = None
    children: tuple[AttributeDef, ...] = ()
    line: int | None = field(default=None, compare=False)

    @property
    def effective(self) -> str | None:
        """Value if set, else DefaultValue."""
        return self.value if self.value is not None else self.default_value


@dataclass(frozen=True)
class ExternalInterface:
    name: str
    ref_base_class_path: str | None = None
    id: str | None = None
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class InterfaceClass:
    name: str
    ref_base_class_path: str | None = None
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class RoleClass:
    name: str
    ref_base_class_path: str | None = None
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SystemUnitClass:
    name: str
    attributes: tuple[AttributeDef, ...] = ()
    external_interfaces: tuple[ExternalInterface, ...] = ()
    description: str | None = None
    extras: tuple[str, ...] = ()
    line: int | None = field(default=None, compare=False)

    def attribute(self, name: str) -> AttributeDef | None:
        return next((a for a in self.attributes if a.name == name), None)

    def interface(self, name: str) -> ExternalInterface | None:
        return next((i for i in self.external_interfaces if i.name == name), None)


@dataclass(frozen=True)
class InternalLink:
    name: str
    ref_partner_a: str
    ref_partner_b: str
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class InternalElement:
    name: str
    id: str | None
    ref_system_unit_path: str | None = None
    attributes: tuple[AttributeDef, ...] = ()
    external_interfaces: tuple[ExternalInterface, ...] = ()
    children: tuple[InternalElement, ...] = ()
    internal_links: tuple[InternalLink, ...] = ()
    description: str | None = None
    extras: tuple[str, ...] = ()
    line: int | None = field(default=None, compare=False)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def attribute(self, name: str) -> AttributeDef | None:
        return next((a for a in self.attributes if a.name == name), None)

    def walk(self) -> Iterator[InternalElement]:
        """This element and its descendants, depth first in document order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class InterfaceClassLib:
    name: str
    version: str | None = None
    classes: tuple[InterfaceClass, ...] = ()
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class RoleClassLib:
    name: str
    version: str | None = None
    classes: tuple[RoleClass, ...] = ()
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SystemUnitClassLib:
    name: str
    version: str | None = None
    classes: tuple[SystemUnitClass, ...] = ()
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class InstanceHierarchy:
    name: str
    version: str | None = None
    elements: tuple[InternalElement, ...] = ()
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class CaexDocument:
    file_name: str | None = None
    schema_version: str | None = None
    interface_libs: tuple[InterfaceClassLib, ...] = ()
    role_class_libs: tuple[RoleClassLib, ...] = ()
    system_unit_libs: tuple[SystemUnitClassLib, ...] = ()
    instance_hierarchies: tuple[InstanceHierarchy, ...] = ()
    extras: tuple[str, ...] = ()

    # -- Navigation ------------------------------------------------------------

    def iter_elements(self) -> Iterator[InternalElement]:
        """Every InternalElement in document order."""
        for hierarchy in self.instance_hierarchies:
            for element in hierarchy.elements:
                yield from element.walk()

    def iter_links(self) -> Iterator[InternalLink]:
        """Every InternalLink in document order."""
        for element in self.iter_elements():
            yield from element.internal_links

    def interface_classes(self) -> list[InterfaceClass]:
        return [c for lib in self.interface_libs for c in lib.classes]

    def element_by_id(self, element_id: str) -> InternalElement | None:
        return next((e for e in self.iter_elements() if e.id == element_id), None)

    def system_unit_class(self, path: str) -> SystemUnitClass | None:
        """Resolve a ``Library/Class`` reference path."""
        lib_name, sep, class_name = path.partition("/")
        if not sep:
            return None
        for lib in self.system_unit_libs:
            if lib.name == lib_name:
                for cls in lib.classes:
                    if cls.name == class_name:
                        return cls
        return None

    def class_of(self, element: InternalElement) -> SystemUnitClass | None:
        if element.ref_system_unit_path is None:
            return None
        return self.system_unit_class(element.ref_system_unit_path)

    def parts(self) -> list[InternalElement]:
        """Leaf elements typed by a system-unit class, in document order."""
        return [
            e for e in self.iter_elements() if e.is_leaf and e.ref_system_unit_path is not None
        ]

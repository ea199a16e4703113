"""InternalLink partner references: ``<element id>:<interface name>``."""

from __future__ import annotations

from cellplan.caex.models import CaexDocument, InternalElement
from cellplan.errors import DanglingLinkError, InterfaceMismatchError, LinkResolutionError


def split_partner_ref(ref: str) -> tuple[str, str]:
    """Split at the first ':'; IDs never contain one."""
    element_id, sep, interface_name = ref.partition(":")
    if not sep:
        raise LinkResolutionError(f"Partner reference {ref!r} has no ':' separator")
    if not element_id or not interface_name:
        raise LinkResolutionError(f"Partner reference {ref!r} has an empty side")
    return element_id, interface_name


def declares_interface(doc: CaexDocument, element: InternalElement, name: str) -> bool:
    """True if the element or its system-unit class declares interface ``name``."""
    if any(i.name == name for i in element.external_interfaces):
        return True
    cls = doc.class_of(element)
    return cls is not None and cls.interface(name) is not None


def resolve_link_endpoint(doc: CaexDocument, ref: str) -> tuple[str, str]:
    """Resolve a partner reference to ``(element_id, interface_name)``."""
    element_id, interface_name = split_partner_ref(ref)
    element = doc.element_by_id(element_id)
    if element is None:
        raise DanglingLinkError(f"Partner reference {ref!r}: no InternalElement with that ID")
    if not declares_interface(doc, element, interface_name):
        raise InterfaceMismatchError(
            f"Partner reference {ref!r}: '{element.name}' declares no interface "
            f"'{interface_name}'"
        )
    return element_id, interface_name

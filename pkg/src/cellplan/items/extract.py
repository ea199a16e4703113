"""CaexDocument → ItemStream."""

from __future__ import annotations

import logging

from cellplan.caex.links import resolve_link_endpoint
from cellplan.caex.models import CaexDocument, InternalElement, SystemUnitClass
from cellplan.caex.validate import is_coordinate_attribute, parse_coordinate
from cellplan.config.constants import DEFAULT_COLOR, DEFAULT_ORIENTATION
from cellplan.errors import CaexStructureError
from cellplan.geom.vectors import Orientation
from cellplan.items.models import Item, ItemStream

logger = logging.getLogger("cellplan.items.extract")


def _presentation(
    element: InternalElement, cls: SystemUnitClass, name: str, default: str
) -> str:
    """Instance Value, instance DefaultValue, class Value, class DefaultValue, default."""
    candidates = []
    for attr in (element.attribute(name), cls.attribute(name)):
        if attr is not None:
            candidates += [attr.value, attr.default_value]
    return next((c for c in candidates if c), default)


def _parameters(doc: CaexDocument) -> list[Item]:
    items = []
    for lib in doc.system_unit_libs:
        for cls in lib.classes:
            for attr in cls.attributes:
                if not is_coordinate_attribute(cls, attr) or attr.effective is None:
                    continue
                coords = parse_coordinate(attr.effective)
                if coords is None:
                    raise CaexStructureError(
                        f"{cls.name}.{attr.name}: {attr.effective!r} is not 'x,y,z'"
                    )
                items.append(Item.parameter(cls.name, attr.name, *coords))
    return items


def _creates(doc: CaexDocument) -> list[Item]:
    items = []
    for element in doc.parts():
        cls = doc.class_of(element)
        if cls is None:
            raise CaexStructureError(
                f"'{element.name}': RefBaseSystemUnitPath "
                f"{element.ref_system_unit_path!r} does not resolve"
            )
        color = _presentation(element, cls, "color", DEFAULT_COLOR)
        orientation = _presentation(element, cls, "orientation", DEFAULT_ORIENTATION)
        try:
            orientation = str(Orientation.parse(orientation))
        except ValueError as exc:
            raise CaexStructureError(f"'{element.name}': {exc}") from None
        items.append(Item.create(cls.name, element.name, color, orientation))
    return items


def _connections(doc: CaexDocument) -> list[Item]:
    parts = {p.id: p for p in doc.parts()}
    items = []
    for link in doc.iter_links():
        sides = []
        for ref in (link.ref_partner_a, link.ref_partner_b):
            element_id, interface_name = resolve_link_endpoint(doc, ref)
            part = parts.get(element_id)
            if part is None:
                raise CaexStructureError(
                    f"InternalLink '{link.name}' connects '{element_id}', which is not a part"
                )
            sides += [part.name, interface_name]
        items.append(Item.connection(*sides))
    return items


def extract_items(doc: CaexDocument) -> ItemStream:
    """Parameters per class attribute, creates per part, connections per InternalLink."""
    parameters = _parameters(doc)
    creates = _creates(doc)
    connections = _connections(doc)
    logger.info(
        "Extracted %d parameters, %d creates, %d connections",
        len(parameters), len(creates), len(connections),
    )
    return ItemStream(tuple(parameters + creates + connections))

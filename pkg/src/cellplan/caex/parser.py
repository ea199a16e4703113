"""CAEX XML → document model.

Elements are matched by local name so namespaced and plain exports read alike.
Unknown child elements are kept verbatim in ``extras`` and otherwise ignored.
"""

from __future__ import annotations

import logging

from lxml import etree

from cellplan.caex.models import (
    AttributeDef,
    CaexDocument,
    ExternalInterface,
    InstanceHierarchy,
    InterfaceClass,
    InterfaceClassLib,
    InternalElement,
    InternalLink,
    RoleClass,
    RoleClassLib,
    SystemUnitClass,
    SystemUnitClassLib,
)
from cellplan.errors import CaexParseError, CaexStructureError

logger = logging.getLogger("cellplan.caex.parser")


def _local(el: etree._Element) -> str:
    return etree.QName(el).localname


def _children(el: etree._Element) -> list[etree._Element]:
    """Element children only (comments and processing instructions dropped)."""
    return [c for c in el if isinstance(c.tag, str)]


def _text(el: etree._Element) -> str:
    return el.text.strip() if el.text is not None else ""


def _raw(el: etree._Element) -> str:
    return etree.tostring(el, with_tail=False, encoding="unicode")


def _version(el: etree._Element) -> str | None:
    for child in _children(el):
        if _local(child) == "Version":
            return _text(child)
    return None


def _description(el: etree._Element) -> str | None:
    for child in _children(el):
        if _local(child) == "Description":
            return _text(child)
    return None


def _parse_attribute(el: etree._Element) -> AttributeDef:
    default_value = value = description = None
    nested: list[AttributeDef] = []
    for child in _children(el):
        tag = _local(child)
        if tag == "DefaultValue":
            default_value = _text(child)
        elif tag == "Value":
            value = _text(child)
        elif tag == "Description":
            description = _text(child)
        elif tag == "Attribute":
            nested.append(_parse_attribute(child))
    return AttributeDef(
        name=el.get("Name", ""),
        data_type=el.get("AttributeDataType"),
        default_value=default_value,
        value=value,
        description=description,
        children=tuple(nested),
        line=el.sourceline,
    )


def _parse_interface(el: etree._Element) -> ExternalInterface:
    return ExternalInterface(
        name=el.get("Name", ""),
        ref_base_class_path=el.get("RefBaseClassPath"),
        id=el.get("ID"),
        line=el.sourceline,
    )


_KNOWN_UNIT_CHILDREN = {"Attribute", "ExternalInterface", "Description", "Version"}


def _parse_system_unit_class(el: etree._Element) -> SystemUnitClass:
    attributes, interfaces, extras = [], [], []
    for child in _children(el):
        tag = _local(child)
        if tag == "Attribute":
            attributes.append(_parse_attribute(child))
        elif tag == "ExternalInterface":
            interfaces.append(_parse_interface(child))
        elif tag not in _KNOWN_UNIT_CHILDREN:
            extras.append(_raw(child))
    return SystemUnitClass(
        name=el.get("Name", ""),
        attributes=tuple(attributes),
        external_interfaces=tuple(interfaces),
        description=_description(el),
        extras=tuple(extras),
        line=el.sourceline,
    )


def _parse_internal_link(el: etree._Element) -> InternalLink:
    return InternalLink(
        name=el.get("Name", ""),
        ref_partner_a=el.get("RefPartnerSideA", ""),
        ref_partner_b=el.get("RefPartnerSideB", ""),
        line=el.sourceline,
    )


def _parse_internal_element(el: etree._Element) -> InternalElement:
    attributes, interfaces, children, links, extras = [], [], [], [], []
    for child in _children(el):
        tag = _local(child)
        if tag == "Attribute":
            attributes.append(_parse_attribute(child))
        elif tag == "ExternalInterface":
            interfaces.append(_parse_interface(child))
        elif tag == "InternalElement":
            children.append(_parse_internal_element(child))
        elif tag == "InternalLink":
            links.append(_parse_internal_link(child))
        elif tag not in _KNOWN_UNIT_CHILDREN:
            extras.append(_raw(child))
    return InternalElement(
        name=el.get("Name", ""),
        id=el.get("ID"),
        ref_system_unit_path=el.get("RefBaseSystemUnitPath"),
        attributes=tuple(attributes),
        external_interfaces=tuple(interfaces),
        children=tuple(children),
        internal_links=tuple(links),
        description=_description(el),
        extras=tuple(extras),
        line=el.sourceline,
    )


def _classes(el: etree._Element, tag: str) -> list[etree._Element]:
    return [c for c in _children(el) if _local(c) == tag]


def parse_caex(data: bytes | str) -> CaexDocument:
    """Parse CAEX XML bytes into a :class:`CaexDocument`.

    Raises ``CaexParseError`` (with line number) for malformed XML and
    ``CaexStructureError`` for a non-CAEX root or duplicate InternalElement IDs.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    parser = etree.XMLParser(remove_comments=True, resolve_entities=False, no_network=True)
    try:
        root = etree.fromstring(data, parser)
    except etree.XMLSyntaxError as exc:
        raise CaexParseError(exc.msg, exc.lineno) from None
    if _local(root) != "CAEXFile":
        raise CaexStructureError(f"Root element is <{_local(root)}>, expected <CAEXFile>")

    interface_libs, role_libs, unit_libs, hierarchies, extras = [], [], [], [], []
    for child in _children(root):
        tag = _local(child)
        if tag == "InterfaceClassLib":
            interface_libs.append(
                InterfaceClassLib(
                    name=child.get("Name", ""),
                    version=_version(child),
                    classes=tuple(
                        InterfaceClass(c.get("Name", ""), c.get("RefBaseClassPath"), c.sourceline)
                        for c in _classes(child, "InterfaceClass")
                    ),
                    line=child.sourceline,
                )
            )
        elif tag == "RoleClassLib":
            role_libs.append(
                RoleClassLib(
                    name=child.get("Name", ""),
                    version=_version(child),
                    classes=tuple(
                        RoleClass(c.get("Name", ""), c.get("RefBaseClassPath"), c.sourceline)
                        for c in _classes(child, "RoleClass")
                    ),
                    line=child.sourceline,
                )
            )
        elif tag == "SystemUnitClassLib":
            unit_libs.append(
                SystemUnitClassLib(
                    name=child.get("Name", ""),
                    version=_version(child),
                    classes=tuple(
                        _parse_system_unit_class(c) for c in _classes(child, "SystemUnitClass")
                    ),
                    line=child.sourceline,
                )
            )
        elif tag == "InstanceHierarchy":
            hierarchies.append(
                InstanceHierarchy(
                    name=child.get("Name", ""),
                    version=_version(child),
                    elements=tuple(
                        _parse_internal_element(c) for c in _classes(child, "InternalElement")
                    ),
                    line=child.sourceline,
                )
            )
        else:
            extras.append(_raw(child))

    doc = CaexDocument(
        file_name=root.get("FileName"),
        schema_version=root.get("SchemaVersion"),
        interface_libs=tuple(interface_libs),
        role_class_libs=tuple(role_libs),
        system_unit_libs=tuple(unit_libs),
        instance_hierarchies=tuple(hierarchies),
        extras=tuple(extras),
    )
    _check_unique_ids(doc)
    logger.debug(
        "Parsed CAEX: %d interface libs, %d unit libs, %d elements",
        len(doc.interface_libs), len(doc.system_unit_libs), sum(1 for _ in doc.iter_elements()),
    )
    return doc


def _check_unique_ids(doc: CaexDocument) -> None:
    seen: dict[str, InternalElement] = {}
    for element in doc.iter_elements():
        if element.id is None:
            continue
        if element.id in seen:
            first = seen[element.id]
            raise CaexStructureError(
                f"Duplicate InternalElement ID '{element.id}' on '{first.name}' "
                f"(line {first.line}) and '{element.name}' (line {element.line})"
            )
        seen[element.id] = element

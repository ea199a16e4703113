"""Document model → CAEX XML."""

from __future__ import annotations

from lxml import etree

from cellplan.caex.models import (
    AttributeDef,
    CaexDocument,
    ExternalInterface,
    InternalElement,
    SystemUnitClass,
)


def _set(el: etree._Element, key: str, value: str | None) -> None:
    if value is not None:
        el.set(key, value)


def _text_child(parent: etree._Element, tag: str, text: str | None) -> None:
    if text is not None:
        etree.SubElement(parent, tag).text = text


class _CaexWriter:
    def __init__(self) -> None:
        # Retained fragments are attached after indentation so they keep their whitespace
        self._pending: list[tuple[etree._Element, tuple[str, ...]]] = []

    def _extras(self, parent: etree._Element, extras: tuple[str, ...]) -> None:
        if extras:
            self._pending.append((parent, extras))

    def _attribute(self, parent: etree._Element, attr: AttributeDef) -> None:
        el = etree.SubElement(parent, "Attribute", Name=attr.name)
        _set(el, "AttributeDataType", attr.data_type)
        _text_child(el, "Description", attr.description)
        _text_child(el, "DefaultValue", attr.default_value)
        _text_child(el, "Value", attr.value)
        for child in attr.children:
            self._attribute(el, child)

    def _interface(self, parent: etree._Element, iface: ExternalInterface) -> None:
        el = etree.SubElement(parent, "ExternalInterface", Name=iface.name)
        _set(el, "RefBaseClassPath", iface.ref_base_class_path)
        _set(el, "ID", iface.id)

    def _system_unit_class(self, parent: etree._Element, cls: SystemUnitClass) -> None:
        el = etree.SubElement(parent, "SystemUnitClass", Name=cls.name)
        _text_child(el, "Description", cls.description)
        for attr in cls.attributes:
            self._attribute(el, attr)
        for iface in cls.external_interfaces:
            self._interface(el, iface)
        self._extras(el, cls.extras)

    def _internal_element(self, parent: etree._Element, element: InternalElement) -> None:
        el = etree.SubElement(parent, "InternalElement", Name=element.name)
        _set(el, "ID", element.id)
        _set(el, "RefBaseSystemUnitPath", element.ref_system_unit_path)
        _text_child(el, "Description", element.description)
        for attr in element.attributes:
            self._attribute(el, attr)
        for iface in element.external_interfaces:
            self._interface(el, iface)
        for child in element.children:
            self._internal_element(el, child)
        for link in element.internal_links:
            etree.SubElement(
                el,
                "InternalLink",
                Name=link.name,
                RefPartnerSideA=link.ref_partner_a,
                RefPartnerSideB=link.ref_partner_b,
            )
        self._extras(el, element.extras)

    def build(self, doc: CaexDocument) -> etree._Element:
        root = etree.Element("CAEXFile")
        _set(root, "FileName", doc.file_name)
        _set(root, "SchemaVersion", doc.schema_version)
        for lib in doc.interface_libs:
            el = etree.SubElement(root, "InterfaceClassLib", Name=lib.name)
            _text_child(el, "Version", lib.version)
            for cls in lib.classes:
                c = etree.SubElement(el, "InterfaceClass", Name=cls.name)
                _set(c, "RefBaseClassPath", cls.ref_base_class_path)
        for lib in doc.role_class_libs:
            el = etree.SubElement(root, "RoleClassLib", Name=lib.name)
            _text_child(el, "Version", lib.version)
            for cls in lib.classes:
                c = etree.SubElement(el, "RoleClass", Name=cls.name)
                _set(c, "RefBaseClassPath", cls.ref_base_class_path)
        for lib in doc.system_unit_libs:
            el = etree.SubElement(root, "SystemUnitClassLib", Name=lib.name)
            _text_child(el, "Version", lib.version)
            for cls in lib.classes:
                self._system_unit_class(el, cls)
        for hierarchy in doc.instance_hierarchies:
            el = etree.SubElement(root, "InstanceHierarchy", Name=hierarchy.name)
            _text_child(el, "Version", hierarchy.version)
            for element in hierarchy.elements:
                self._internal_element(el, element)
        self._extras(root, doc.extras)
        etree.indent(root, space="  ")
        for parent, extras in self._pending:
            for raw in extras:
                parent.append(etree.fromstring(raw))
        return root


def write_caex(doc: CaexDocument) -> bytes:
    """Serialize the retained content back to CAEX XML (UTF-8, indented)."""
    root = _CaexWriter().build(doc)
    return etree.tostring(root, xml_declaration=True, encoding="utf-8")

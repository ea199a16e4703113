"""Lint rules over a parsed CAEX document."""

from __future__ import annotations

import logging
import re
import uuid
from collections import defaultdict
from dataclasses import dataclass
from enum import StrEnum

from cellplan.caex.links import resolve_link_endpoint
from cellplan.caex.models import AttributeDef, CaexDocument, InternalElement, SystemUnitClass
from cellplan.config.constants import PRESENTATION_ATTRIBUTES
from cellplan.errors import DanglingLinkError, InterfaceMismatchError, LinkResolutionError
from cellplan.geom.vectors import Orientation

logger = logging.getLogger("cellplan.caex.validate")

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
COORDINATE_RE = re.compile(rf"^\s*({_REAL})\s*,\s*({_REAL})\s*,\s*({_REAL})\s*$")


class Severity(StrEnum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    location: str

    def __str__(self) -> str:
        return f"{self.severity} {self.code} {self.location}: {self.message}"


def parse_coordinate(text: str) -> tuple[str, str, str] | None:
    """The three decimal texts of an ``"x,y,z"`` value, or ``None`` if malformed."""
    match = COORDINATE_RE.match(text)
    return match.groups() if match else None


def is_coordinate_attribute(cls: SystemUnitClass, attr: AttributeDef) -> bool:
    """Coordinate-bearing: named after an interface, or a comma-valued non-presentation field."""
    if attr.name in PRESENTATION_ATTRIBUTES:
        return False
    if cls.interface(attr.name) is not None:
        return True
    text = attr.effective
    return text is not None and "," in text


def _where(kind: str, name: str, line: int | None) -> str:
    return f"{kind} '{name}'" + (f" (line {line})" if line is not None else "")


def _is_uuid(text: str) -> bool:
    try:
        return str(uuid.UUID(text)) == text.lower()
    except ValueError:
        return False


def validate_caex(doc: CaexDocument) -> list[Diagnostic]:
    """Run every rule; returns diagnostics in a stable order (rule, then document order)."""
    out: list[Diagnostic] = []
    out += _check_classes(doc)
    out += _check_elements(doc)
    out += _check_links(doc)
    out += _check_connectivity(doc)
    logger.debug("Validation produced %d diagnostics", len(out))
    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def _check_classes(doc: CaexDocument) -> list[Diagnostic]:
    out = []
    for lib in doc.system_unit_libs:
        for cls in lib.classes:
            where = _where("SystemUnitClass", f"{lib.name}/{cls.name}", cls.line)
            for attr in cls.attributes:
                if is_coordinate_attribute(cls, attr) and attr.effective is not None:
                    if parse_coordinate(attr.effective) is None:
                        out.append(Diagnostic(
                            Severity.ERROR, "malformed-coordinate",
                            f"attribute '{attr.name}' value {attr.effective!r} is not 'x,y,z'",
                            where,
                        ))
            for iface in cls.external_interfaces:
                attr = cls.attribute(iface.name)
                if attr is None or attr.effective is None:
                    out.append(Diagnostic(
                        Severity.ERROR, "missing-coordinate",
                        f"interface '{iface.name}' has no coordinate attribute",
                        where,
                    ))
            out += _check_orientation(cls.attribute("orientation"), where)
    return out


def _check_orientation(attr: AttributeDef | None, where: str) -> list[Diagnostic]:
    if attr is None:
        return []
    out = []
    for text in (attr.default_value, attr.value):
        if text is None:
            continue
        try:
            Orientation.parse(text)
        except ValueError:
            out.append(Diagnostic(
                Severity.ERROR, "malformed-orientation",
                f"orientation {text!r} is not 'yaw,pitch'", where,
            ))
    return out


def _check_elements(doc: CaexDocument) -> list[Diagnostic]:
    out = []
    names: dict[str, InternalElement] = {}
    for element in doc.iter_elements():
        where = _where("InternalElement", element.name, element.line)
        if element.id is None:
            out.append(Diagnostic(Severity.ERROR, "invalid-id", "missing ID", where))
        elif not _is_uuid(element.id):
            out.append(Diagnostic(
                Severity.ERROR, "invalid-id", f"ID {element.id!r} is not an RFC 4122 UUID", where
            ))
        if element.ref_system_unit_path is None:
            if element.is_leaf:
                out.append(Diagnostic(
                    Severity.WARNING, "missing-class",
                    "leaf element has no RefBaseSystemUnitPath and is not a part", where,
                ))
            continue
        if doc.class_of(element) is None:
            out.append(Diagnostic(
                Severity.ERROR, "unknown-class",
                f"RefBaseSystemUnitPath {element.ref_system_unit_path!r} does not resolve",
                where,
            ))
        out += _check_orientation(element.attribute("orientation"), where)
        if element.is_leaf:
            if element.name in names:
                out.append(Diagnostic(
                    Severity.ERROR, "duplicate-name",
                    f"part name '{element.name}' is used more than once", where,
                ))
            names[element.name] = element
    return out


def _check_links(doc: CaexDocument) -> list[Diagnostic]:
    out = []
    for link in doc.iter_links():
        where = _where("InternalLink", link.name, link.line)
        for ref in (link.ref_partner_a, link.ref_partner_b):
            try:
                resolve_link_endpoint(doc, ref)
            except DanglingLinkError as exc:
                out.append(Diagnostic(Severity.ERROR, "dangling-link", str(exc), where))
            except InterfaceMismatchError as exc:
                out.append(Diagnostic(Severity.ERROR, "interface-mismatch", str(exc), where))
            except LinkResolutionError as exc:
                out.append(Diagnostic(Severity.ERROR, "malformed-link", str(exc), where))
    return out


def _check_connectivity(doc: CaexDocument) -> list[Diagnostic]:
    # Parts without an ID are already reported as invalid-id
    parts = [p for p in doc.parts() if p.id is not None]
    if len(parts) < 2:
        return []
    by_id = {p.id: p.name for p in parts}
    adjacency: dict[str, set[str]] = defaultdict(set)
    for link in doc.iter_links():
        try:
            a, _ = resolve_link_endpoint(doc, link.ref_partner_a)
            b, _ = resolve_link_endpoint(doc, link.ref_partner_b)
        except LinkResolutionError:
            continue
        if a in by_id and b in by_id:
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen = {parts[0].id}
    frontier = [parts[0].id]
    while frontier:
        current = frontier.pop()
        for neighbour in adjacency[current]:
            if neighbour not in seen:
                seen.add(neighbour)
                frontier.append(neighbour)
    unreached = [p.name for p in parts if p.id not in seen]
    if not unreached:
        return []
    return [Diagnostic(
        Severity.WARNING, "disconnected",
        f"parts not connected to '{parts[0].name}': {', '.join(unreached)}",
        "InstanceHierarchy",
    )]

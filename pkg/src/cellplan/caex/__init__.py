"""CAEX (IEC 62424) parsing, link resolution, validation and serialization."""

from cellplan.caex.links import resolve_link_endpoint
from cellplan.caex.models import CaexDocument
from cellplan.caex.parser import parse_caex
from cellplan.caex.validate import Diagnostic, Severity, validate_caex
from cellplan.caex.writer import write_caex

__all__ = [
    "CaexDocument",
    "Diagnostic",
    "Severity",
    "parse_caex",
    "resolve_link_endpoint",
    "validate_caex",
    "write_caex",
]

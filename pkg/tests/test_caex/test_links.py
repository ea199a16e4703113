"""Tests for InternalLink partner resolution."""

from __future__ import annotations

import pytest

from cellplan.caex import parse_caex, resolve_link_endpoint
from cellplan.caex.links import declares_interface, split_partner_ref
from cellplan.errors import DanglingLinkError, InterfaceMismatchError, LinkResolutionError

BACK_ID = "2ddc2cf5-1127-471f-b174-dc5b088c9d23"


@pytest.fixture
def cranfield(cranfield_bytes):
    return parse_caex(cranfield_bytes)


def test_split():
    assert split_partner_ref(f"{BACK_ID}:square_left") == (BACK_ID, "square_left")


def test_split_keeps_colons_in_interface_name():
    assert split_partner_ref("abc:port:1") == ("abc", "port:1")


@pytest.mark.parametrize("ref", ["no-separator", ":iface", "element:"])
def test_split_rejects(ref):
    with pytest.raises(LinkResolutionError):
        split_partner_ref(ref)


def test_resolve(cranfield):
    assert resolve_link_endpoint(cranfield, f"{BACK_ID}:shaft") == (BACK_ID, "shaft")


def test_dangling(cranfield):
    with pytest.raises(DanglingLinkError):
        resolve_link_endpoint(cranfield, "ffffffff-1127-471f-b174-dc5b088c9d23:shaft")


def test_interface_mismatch(cranfield):
    with pytest.raises(InterfaceMismatchError, match="back"):
        resolve_link_endpoint(cranfield, f"{BACK_ID}:pendulum")


def test_errors_share_a_base():
    assert issubclass(DanglingLinkError, LinkResolutionError)
    assert issubclass(InterfaceMismatchError, LinkResolutionError)


def test_interface_declared_on_the_element():
    xml = """<CAEXFile><InstanceHierarchy Name="H">
      <InternalElement Name="a" ID="1"><ExternalInterface Name="port" /></InternalElement>
    </InstanceHierarchy></CAEXFile>"""
    doc = parse_caex(xml)
    element = doc.element_by_id("1")
    assert declares_interface(doc, element, "port")
    assert not declares_interface(doc, element, "other")

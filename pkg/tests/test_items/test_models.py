"""Tests for item records and stream checks."""

from __future__ import annotations

import pytest

from cellplan.errors import ItemStreamError
from cellplan.items import Item, ItemKind, ItemStream
from cellplan.items.models import normalize_real

P_TOP = Item.parameter("Brick", "top", "0", "0.5", "0")
P_BOTTOM = Item.parameter("Brick", "bottom", "0", "-0.5", "0")
C_A = Item.create("Brick", "a", "red", "0,0")
C_B = Item.create("Brick", "b", "blue", "90,0")
LINK = Item.connection("a", "top", "b", "bottom")


class TestNormalizeReal:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.664", "0.664"),
            ("-0.006", "-0.006"),
            ("0", "0"),
            ("1e-3", "0.001"),
            ("2.5E+2", "250"),
            (" 1.50 ", "1.50"),
        ],
    )
    def test_plain_decimal(self, text, expected):
        assert normalize_real(text) == expected

    @pytest.mark.parametrize("text", ["x", "", "1,5", "nan", "inf"])
    def test_rejects(self, text):
        with pytest.raises(ItemStreamError):
            normalize_real(text)


class TestItem:
    def test_kind_from_string(self):
        item = Item("create", ("Brick", "a", "red", "0,0"))
        assert item.kind is ItemKind.CREATE

    def test_parameter_coordinates(self):
        item = Item.parameter("Brick", "p", "1e-1", "2", "-3.25")
        assert item.fields[2:] == ("0.1", "2", "-3.25")
        assert item.coordinates() == (0.1, 2.0, -3.25)
        assert item.key == "Brick.p"

    def test_wrong_arity(self):
        with pytest.raises(ItemStreamError, match="takes 4 fields"):
            Item(ItemKind.CREATE, ("Brick", "a", "red"))

    @pytest.mark.parametrize("field", ["", "two words", "tab\there"])
    def test_rejects_blank_or_spaced_fields(self, field):
        with pytest.raises(ItemStreamError):
            Item.create("Brick", field, "red", "0,0")

    def test_rejects_bad_orientation(self):
        with pytest.raises(ItemStreamError, match="yaw,pitch"):
            Item.create("Brick", "a", "red", "north")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            Item("delete", ("a",))


class TestItemStream:
    def test_valid_stream(self):
        stream = ItemStream((P_TOP, P_BOTTOM, C_A, C_B, LINK))
        assert len(stream) == 5
        assert stream.parameters == [P_TOP, P_BOTTOM]
        assert stream.creates == [C_A, C_B]
        assert stream.connections == [LINK]

    def test_empty(self):
        assert len(ItemStream()) == 0

    def test_order_enforced(self):
        with pytest.raises(ItemStreamError, match="after a later kind"):
            ItemStream((P_TOP, C_A, P_BOTTOM))

    def test_from_unordered_is_stable(self):
        stream = ItemStream.from_unordered([LINK, C_A, P_TOP, C_B, P_BOTTOM])
        assert stream.items == (P_TOP, P_BOTTOM, C_A, C_B, LINK)

    def test_duplicate_instance(self):
        with pytest.raises(ItemStreamError, match="created twice"):
            ItemStream((P_TOP, C_A, C_A))

    def test_connection_to_unknown_instance(self):
        with pytest.raises(ItemStreamError, match="'c'"):
            ItemStream((P_TOP, P_BOTTOM, C_A, Item.connection("a", "top", "c", "bottom")))

    def test_connection_point_without_parameter(self):
        with pytest.raises(ItemStreamError, match="Brick.side"):
            ItemStream((P_TOP, C_A, C_B, Item.connection("a", "top", "b", "side")))

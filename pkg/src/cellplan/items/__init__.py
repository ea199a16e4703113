"""Item stream: the exchange format between product description and digital twin."""

from cellplan.items.extract import extract_items
from cellplan.items.models import Item, ItemKind, ItemStream
from cellplan.items.textio import read_items, write_items

__all__ = ["Item", "ItemKind", "ItemStream", "extract_items", "read_items", "write_items"]

"""The ``.items`` text format: one item per line, kind first, single-space separated."""

from __future__ import annotations

from cellplan.errors import ItemFormatError, ItemStreamError
from cellplan.items.models import ARITY, Item, ItemKind, ItemStream


def write_items(stream: ItemStream) -> str:
    return "".join(f"{item.kind} {' '.join(item.fields)}\n" for item in stream.items)


def read_items(text: str) -> ItemStream:
    """Parse items text; blank lines and ``#`` comments are skipped."""
    items: list[Item] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *fields = line.split()
        try:
            kind = ItemKind(keyword)
        except ValueError:
            raise ItemFormatError(f"unknown item kind {keyword!r}", lineno) from None
        if len(fields) != ARITY[kind]:
            raise ItemFormatError(
                f"{kind} takes {ARITY[kind]} fields, got {len(fields)}", lineno
            )
        try:
            items.append(Item(kind, tuple(fields)))
        except ItemStreamError as exc:
            raise ItemFormatError(str(exc), lineno) from None
    return ItemStream.from_unordered(items)

"""Assembly sequence planning: which part goes next."""

from __future__ import annotations

from cellplan.config.constants import SURFACE_TOLERANCE
from cellplan.errors import ConnectivityError
from cellplan.twin.models import DigitalPart, DigitalTwin


def next_unassembled_part(twin: DigitalTwin) -> DigitalPart | None:
    """Next part to assemble, or ``None`` once everything is assembled.

    Parts resting on the assembly surface come first, in create order. After
    that, among parts connected to something already assembled, the one with
    the lowest target box wins (ties by instance name). Nothing is marked.
    """
    remaining = [p for p in twin.parts if not p.assembled]
    if not remaining:
        return None
    floor = min(p.target_box().min.y for p in twin.parts)
    for p in remaining:
        if abs(p.target_box().min.y - floor) <= SURFACE_TOLERANCE:
            return p

    candidates = [
        p
        for p in remaining
        if any(c.other(p)[0].assembled for c in twin.connections_of(p))
    ]
    if not candidates:
        raise ConnectivityError(
            "No unassembled part touches the assembly",
            [[p.instance_name for p in remaining]],
        )
    return min(candidates, key=lambda p: (p.target_box().min.y, p.instance_name))


def plan_sequence(twin: DigitalTwin) -> list[DigitalPart]:
    """The full assembly order; part flags are restored afterwards."""
    saved = [(p.assembled, p.delivered) for p in twin.parts]
    order: list[DigitalPart] = []
    try:
        for p in twin.parts:
            p.assembled = False
        while (part := next_unassembled_part(twin)) is not None:
            order.append(part)
            part.assembled = True
    finally:
        for p, (assembled, delivered) in zip(twin.parts, saved, strict=True):
            p.assembled, p.delivered = assembled, delivered
    return order

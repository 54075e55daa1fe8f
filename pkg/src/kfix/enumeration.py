"""Stage-wise enumeration of W_e, the domain of program e."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .machine import Halted, run_index
from .numbering import from_decimal, to_decimal


@dataclass(frozen=True)
class Snapshot:
    """W_{e,s}: inputs y < s on which e halts in fewer than s ticks."""

    e: int
    s: int
    members: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"e": to_decimal(self.e), "s": to_decimal(self.s),
                "members": [to_decimal(y) for y in self.members]}

    @classmethod
    def from_json(cls, data: dict) -> "Snapshot":
        return cls(from_decimal(data["e"]), from_decimal(data["s"]),
                   [from_decimal(y) for y in data["members"]])


@dataclass(frozen=True)
class In:
    ticks: int


class _Unknown:
    def __repr__(self):
        return "Unknown"


Unknown = _Unknown()


def halts_before(e: int, y: int, s: int) -> bool:
    out = run_index(e, y, s)
    return isinstance(out, Halted) and out.ticks < s


def w_snapshot(e: int, s: int) -> Snapshot:
    return Snapshot(e, s, [y for y in range(s) if halts_before(e, y, s)])


def w_member_bounded(e: int, y: int, fuel: int):
    """``In(ticks)`` if e halts on y within ``fuel``; otherwise ``Unknown``.

    ``Unknown`` is never evidence that y is outside W_e.
    """
    out = run_index(e, y, fuel)
    return In(out.ticks) if isinstance(out, Halted) else Unknown


def max_snapshot(e: int, s: int) -> Optional[int]:
    """max(W_{e,s}), scanning down from s - 1; ``None`` when empty."""
    for y in range(s - 1, -1, -1):
        if halts_before(e, y, s):
            return y
    return None


def maxes(e: int, s_limit: int) -> List[int]:
    """Distinct values of max(W_{e,s}) for s <= s_limit, skipping empty stages.

    W_{e,s} only grows with s, so the list is strictly increasing and each
    stage only needs scanning down to the previous max.
    """
    out: List[int] = []
    for s in range(1, s_limit + 1):
        floor = out[-1] if out else -1
        for y in range(s - 1, floor, -1):
            if halts_before(e, y, s):
                out.append(y)
                break
    return out

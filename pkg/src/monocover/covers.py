"""Cover data model and the verifier every solver output must pass."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .graphs import DISCONNECTED, EdgeColouring, set_diameter


@dataclass(frozen=True)
class CoverPart:
    vertices: frozenset[int]
    colour: int

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("cover parts must be nonempty")


@dataclass(frozen=True)
class Cover:
    """Claimed cover: (vertex set, colour) pairs plus a claimed diameter bound.

    Parts may overlap; whether the union spans and each part is connected
    within its claimed bound is the verifier's job, not the constructor's.
    ``claimed_bound`` is an integer or ``math.inf`` for connectivity-only
    covers.
    """

    parts: tuple[CoverPart, ...]
    claimed_bound: float

    def __post_init__(self):
        if not self.parts:
            raise ValueError("a cover needs at least one part")
        if self.claimed_bound != math.inf and (
                self.claimed_bound < 0 or int(self.claimed_bound) != self.claimed_bound):
            raise ValueError("claimed_bound must be a nonnegative integer or inf")

    @classmethod
    def of(cls, parts: Iterable[tuple[Iterable[int], int]], bound: float) -> "Cover":
        return cls(tuple(CoverPart(frozenset(vs), c) for vs, c in parts), bound)


@dataclass(frozen=True)
class PartReport:
    connected: bool
    diameter: object  # int, or DISCONNECTED


@dataclass(frozen=True)
class CoverReport:
    valid: bool
    parts: tuple[PartReport, ...]
    uncovered: frozenset[int]
    part_count_ok: bool


def verify_cover(colouring: EdgeColouring, cover: Cover,
                 bound: float | None = None,
                 max_parts: int | None = None) -> CoverReport:
    """Judge a claimed cover; pure and deterministic.

    Valid iff the parts cover every vertex, each part induces a connected
    monochromatic subgraph of diameter <= bound, and there are at most
    ``max_parts`` parts (default k-1).
    """
    if bound is None:
        bound = cover.claimed_bound
    if max_parts is None:
        max_parts = colouring.k - 1
    n = colouring.n
    covered = set()
    reports = []
    all_ok = True
    for part in cover.parts:
        if part.colour < 1 or part.colour > colouring.k:
            raise ValueError(f"part colour {part.colour} out of range")
        if any(v < 0 or v >= n for v in part.vertices):
            raise ValueError("part vertex out of range")
        diam = set_diameter(colouring, part.colour, part.vertices)
        connected = diam is not DISCONNECTED
        reports.append(PartReport(connected, diam))
        if not connected or diam > bound:
            all_ok = False
        covered.update(part.vertices)
    uncovered = frozenset(range(n)) - covered
    part_count_ok = len(cover.parts) <= max_parts
    valid = all_ok and not uncovered and part_count_ok
    return CoverReport(valid, tuple(reports), uncovered, part_count_ok)


# -- cover file format ----------------------------------------------------


def format_cover(cover: Cover) -> str:
    bound = "inf" if cover.claimed_bound == math.inf else str(int(cover.claimed_bound))
    out = [f"parts={len(cover.parts)} bound={bound}"]
    for part in cover.parts:
        vs = " ".join(str(v) for v in sorted(part.vertices))
        out.append(f"{part.colour}: {vs}")
    return "\n".join(out) + "\n"


def parse_cover(text: str) -> Cover:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty cover file")
    head = dict(tok.split("=", 1) for tok in lines[0].split())
    try:
        count = int(head["parts"])
        bound = math.inf if head["bound"] == "inf" else int(head["bound"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad cover header: {lines[0]!r}") from exc
    if len(lines) - 1 != count:
        raise ValueError("part count does not match header")
    parts = []
    for line in lines[1:]:
        colour_s, _, rest = line.partition(":")
        verts = frozenset(int(tok) for tok in rest.split())
        parts.append(CoverPart(verts, int(colour_s)))
    return Cover(tuple(parts), bound)

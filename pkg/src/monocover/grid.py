"""Geometry of grid product graphs: adjacency, structure lemmas, covers.

G_l has vertex set N_0^l with an edge between tuples that differ in every
coordinate.  Lines and planes are always axis-aligned: a plane fixes one
coordinate, a line fixes two.  The constructive cover for arity 3 follows
a case split on the component structure; independent-set classifiers
return re-checkable witnesses; the bounded-degree search enumerates
canonical representatives only (coordinate values relabelled to first-use
order, which is sound because adjacency depends only on equality).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import ImpossibleByLemmaError
from .graphs import EdgeColouring, HostGraph, MonoMetrics

GridPoint = tuple[int, ...]


@dataclass(frozen=True)
class GridPointSet:
    l: int
    points: frozenset[GridPoint]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.l:
                raise ValueError(f"point {p} has arity != {self.l}")
            if any(x < 0 for x in p):
                raise ValueError(f"point {p} has a negative coordinate")

    @classmethod
    def of(cls, points: Iterable[GridPoint]) -> "GridPointSet":
        pts = frozenset(tuple(p) for p in points)
        if not pts:
            raise ValueError("empty point set")
        return cls(len(next(iter(pts))), pts)


def grid_adjacent(x: GridPoint, y: GridPoint) -> bool:
    """True iff the two tuples differ at every coordinate."""
    if len(x) != len(y):
        raise ValueError("arity mismatch")
    return all(a != b for a, b in zip(x, y))


def shared_axes(x: GridPoint, y: GridPoint) -> tuple[int, ...]:
    return tuple(i for i, (a, b) in enumerate(zip(x, y)) if a == b)


def common_plane(x: GridPoint, y: GridPoint) -> tuple[int, int] | None:
    """(axis, value) of a plane containing both, if any (first axis wins)."""
    for i in shared_axes(x, y):
        return (i, x[i])
    return None


# -- structure of independent sets in G_3 ----------------------------------


@dataclass(frozen=True)
class Struct1:
    """Coplanar: every point has coordinate ``value`` on ``axis``."""
    axis: int
    value: int


@dataclass(frozen=True)
class Struct2:
    """Role order ((a,b,c), (a',b',c), (a',b,c'), (a,b',c'))."""
    roles: tuple[GridPoint, GridPoint, GridPoint, GridPoint]


@dataclass(frozen=True)
class Struct3:
    """After permuting axes by ``axes``, the roles read
    ((a,b,c), (a,b,c'), (a,b',x), (a',b,x))."""
    axes: tuple[int, int, int]
    roles: tuple[GridPoint, GridPoint, GridPoint, GridPoint]


def _check_independent(points: Sequence[GridPoint], size: int) -> list[GridPoint]:
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) != size:
        raise ValueError(f"need exactly {size} distinct points")
    if any(len(p) != 3 for p in pts):
        raise ValueError("arity must be 3")
    for x, y in combinations(pts, 2):
        if grid_adjacent(x, y):
            raise ValueError(f"points {x} and {y} are adjacent")
    return pts


def classify_independent4(points: Sequence[GridPoint]) -> Struct1 | Struct2 | Struct3:
    """Classify an independent 4-set in G_3; first applicable tag wins."""
    pts = _check_independent(points, 4)
    for axis in range(3):
        vals = {p[axis] for p in pts}
        if len(vals) == 1:
            return Struct1(axis, vals.pop())
    base = pts[0]
    a, b, c = base
    for rest in permutations(pts[1:]):
        q1, q2, q3 = rest
        ap, bp, cp = q1[0], q1[1], q2[2]
        if (q1 == (ap, bp, c) and ap != a and bp != b
                and q2 == (ap, b, cp) and cp != c
                and q3 == (a, bp, cp)):
            return Struct2((base, q1, q2, q3))
    for axes in permutations(range(3)):
        for roles in permutations(pts):
            r0, r1, r2, r3 = (tuple(p[i] for i in axes) for p in roles)
            va, vb, vc = r0
            if not (r1[0] == va and r1[1] == vb and r1[2] != vc):
                continue
            if not (r2[0] == va and r2[1] != vb):
                continue
            x = r2[2]
            if r3[0] != va and r3[1] == vb and r3[2] == x:
                return Struct3(axes, roles)
    raise ImpossibleByLemmaError("independent 4-set fits no structure class",
                                 witness={"points": pts})


@dataclass(frozen=True)
class Coplanar5:
    axis: int
    value: int


@dataclass(frozen=True)
class ThreeLines:
    """All points lie on the three axis lines through ``apex``; per point
    the witness records one axis along which its line varies."""
    apex: GridPoint
    line_axis: Mapping[GridPoint, int]


def classify_independent5(points: Sequence[GridPoint]) -> Coplanar5 | ThreeLines:
    """Classify an independent 5-set in G_3."""
    pts = _check_independent(points, 5)
    for axis in range(3):
        vals = {p[axis] for p in pts}
        if len(vals) == 1:
            return Coplanar5(axis, vals.pop())
    axis_values = [sorted({p[i] for p in pts}) for i in range(3)]
    for apex in product(*axis_values):
        assignment = {}
        for p in pts:
            agree = [i for i in range(3) if p[i] == apex[i]]
            if len(agree) < 2:
                break
            free = [i for i in range(3) if i not in agree]
            assignment[p] = free[0] if free else 0
        else:
            return ThreeLines(apex, assignment)
    raise ImpossibleByLemmaError("independent 5-set fits neither alternative",
                                 witness={"points": pts})


# -- the constructive cover for G_3 ----------------------------------------


@dataclass(frozen=True)
class GridCoverPart:
    kind: str  # "hyperplane" or "connected"
    members: frozenset[GridPoint]
    axis: int | None = None
    value: int | None = None

    def check(self) -> bool:
        if self.kind == "hyperplane":
            return all(p[self.axis] == self.value for p in self.members)
        if self.kind == "connected":
            return _is_connected(sorted(self.members))
        return False


def _is_connected(pts: Sequence[GridPoint]) -> bool:
    if not pts:
        return False
    todo = {pts[0]}
    seen = set()
    rest = set(pts)
    while todo:
        p = todo.pop()
        seen.add(p)
        rest.discard(p)
        todo |= {q for q in rest if grid_adjacent(p, q)}
    return not rest


def _g3_components(pts: Sequence[GridPoint]) -> list[list[GridPoint]]:
    left = set(pts)
    comps = []
    for p in sorted(pts):
        if p not in left:
            continue
        comp = {p}
        frontier = {p}
        left.discard(p)
        while frontier:
            nxt = {q for q in left if any(grid_adjacent(q, r) for r in frontier)}
            left -= nxt
            comp |= nxt
            frontier = nxt
        comps.append(sorted(comp))
    return comps


def _hyperplane_part(pts: Iterable[GridPoint], axis: int, value: int) -> GridCoverPart:
    members = frozenset(p for p in pts if p[axis] == value)
    return GridCoverPart("hyperplane", members, axis, value)


def verify_grid_cover(point_set: GridPointSet,
                      parts: Sequence[GridCoverPart]) -> bool:
    covered = set()
    for part in parts:
        if not part.members <= point_set.points or not part.check():
            return False
        covered |= part.members
    return covered == point_set.points


def cover_G3(point_set: GridPointSet) -> list[GridCoverPart]:
    """Cover a finite subset of G_3 by at most three parts, each either a
    hyperplane slice or a connected piece.

    Branches: up to three components are taken as-is; three collinear
    points in distinct components force a two-plane cover; if every
    representative triple is coplanar, two components plus one plane
    suffice; otherwise the structure of independent sets pins the
    remaining points to three concurrent lines (two planes), a coplanar
    representative set (three planes), or a collinear representative pair
    (two components plus a plane).
    """
    if point_set.l != 3:
        raise ValueError("cover construction is specific to arity 3")
    pts = sorted(point_set.points)
    comps = _g3_components(pts)
    if len(comps) <= 3:
        return [GridCoverPart("connected", frozenset(c)) for c in comps]
    comp_idx = {p: i for i, c in enumerate(comps) for p in c}

    def done(parts: list[GridCoverPart], what: str) -> list[GridCoverPart]:
        if not verify_grid_cover(point_set, parts) or len(parts) > 3:
            raise ImpossibleByLemmaError(
                f"grid cover self-verification failed in {what}",
                witness={"points": pts, "parts": [
                    (p.kind, p.axis, p.value, sorted(p.members)) for p in parts]})
        # drop parts that add nothing
        kept = list(parts)
        i = 0
        while i < len(kept):
            rest = kept[:i] + kept[i + 1:]
            if rest and kept[i].members <= set().union(*(p.members for p in rest)):
                kept = rest
            else:
                i += 1
        return kept

    # Three collinear points in three different components: two planes.
    buckets: dict[tuple[int, int, int, int], list[GridPoint]] = {}
    for p in pts:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            buckets.setdefault((i, j, p[i], p[j]), []).append(p)
    for (i, j, u, v), line in sorted(buckets.items()):
        if len({comp_idx[p] for p in line}) >= 3:
            parts = [_hyperplane_part(pts, i, u), _hyperplane_part(pts, j, v)]
            return done(parts, "collinear-representatives observation")

    def noncoplanar_rep_triple() -> tuple[GridPoint, GridPoint, GridPoint] | None:
        for x, y in combinations(pts, 2):
            if comp_idx[x] == comp_idx[y]:
                continue
            for z in pts:
                if comp_idx[z] in (comp_idx[x], comp_idx[y]):
                    continue
                if all(len({p[i] for p in (x, y, z)}) > 1 for i in range(3)):
                    return (x, y, z)
        return None

    triple = noncoplanar_rep_triple()
    if triple is None:
        # Every representative triple is coplanar: a noncollinear pair in
        # distinct components fixes the plane that holds all other components.
        for x, y in combinations(pts, 2):
            if comp_idx[x] == comp_idx[y] or len(shared_axes(x, y)) != 1:
                continue
            axis = shared_axes(x, y)[0]
            parts = [
                GridCoverPart("connected", frozenset(comps[comp_idx[x]])),
                GridCoverPart("connected", frozenset(comps[comp_idx[y]])),
                _hyperplane_part(pts, axis, x[axis]),
            ]
            return done(parts, "all-representatives-coplanar case")
        raise ImpossibleByLemmaError(
            "four components but no noncollinear representative pair",
            witness={"points": pts})

    if len(comps) > 4:
        # The triple pins everything to three concurrent axis lines; two of
        # the three planes through their apex cover the whole set.
        x1, x2, x3 = triple
        apex = []
        for i in range(3):
            vals = [x1[i], x2[i], x3[i]]
            doubled = [v for v in set(vals) if vals.count(v) == 2]
            if len(doubled) != 1:
                raise ImpossibleByLemmaError(
                    "representative triple without a doubled coordinate",
                    witness={"triple": triple})
            apex.append(doubled[0])
        for i, j in ((0, 1), (0, 2), (1, 2)):
            parts = [_hyperplane_part(pts, i, apex[i]),
                     _hyperplane_part(pts, j, apex[j])]
            if verify_grid_cover(point_set, parts):
                return parts
        raise ImpossibleByLemmaError(
            "concurrent-lines case produced no two-plane cover",
            witness={"triple": triple, "apex": apex})

    # Exactly four components.
    # A coplanar complete representative set exists iff some axis value is
    # available in all four components.
    for axis in range(3):
        per_comp = [sorted({p[axis] for p in c}) for c in comps]
        shared = set(per_comp[0])
        for vals in per_comp[1:]:
            shared &= set(vals)
        for value in sorted(shared):
            reps = [next(p for p in c if p[axis] == value) for c in comps]
            parts = _coplanar_rep_cover(pts, reps, axis, value)
            if parts is not None and verify_grid_cover(point_set, parts):
                return parts

    # No coplanar complete representative set: a collinear representative
    # pair forces the other two components into one plane.
    for q1, q2 in combinations(pts, 2):
        if comp_idx[q1] == comp_idx[q2] or len(shared_axes(q1, q2)) != 2:
            continue
        d = next(i for i in range(3) if q1[i] != q2[i])
        rest = [c for k, c in enumerate(comps)
                if k not in (comp_idx[q1], comp_idx[q2])]
        vals = {p[d] for c in rest for p in c}
        if len(vals) == 1:
            parts = [
                GridCoverPart("connected", frozenset(comps[comp_idx[q1]])),
                GridCoverPart("connected", frozenset(comps[comp_idx[q2]])),
                _hyperplane_part(pts, d, vals.pop()),
            ]
            return done(parts, "collinear-representative-pair case")

    if all(len(c) == 1 for c in comps):
        # Four isolated points: two as singleton parts, two on a plane.
        p3, p4 = comps[2][0], comps[3][0]
        plane = common_plane(p3, p4)
        if plane is not None:
            parts = [
                GridCoverPart("connected", frozenset(comps[0])),
                GridCoverPart("connected", frozenset(comps[1])),
                _hyperplane_part(pts, plane[0], plane[1]),
            ]
            return done(parts, "four-singletons case")
    raise ImpossibleByLemmaError("no cover branch applied",
                                 witness={"points": pts})


def _coplanar_rep_cover(pts: Sequence[GridPoint], reps: Sequence[GridPoint],
                        axis: int, value: int) -> list[GridCoverPart] | None:
    """Three-plane cover from a coplanar complete representative set."""
    others = [i for i in range(3) if i != axis]
    seqs = {i: [r[i] for r in reps] for i in others}
    parts = [_hyperplane_part(pts, axis, value)]
    for i in others:
        doubled = sorted(v for v in set(seqs[i]) if seqs[i].count(v) == 2)
        if len(doubled) == 2:
            # one coordinate carries two doubled values: its two planes
            return [parts[0],
                    _hyperplane_part(pts, i, doubled[0]),
                    _hyperplane_part(pts, i, doubled[1])]
    for i in others:
        doubled = sorted(v for v in set(seqs[i]) if seqs[i].count(v) == 2)
        if doubled:
            parts.append(_hyperplane_part(pts, i, doubled[0]))
    return parts


def exists_two_part_cover(point_set: GridPointSet) -> bool:
    """Exhaustive check for a two-set cover in the indexed sense.

    Each set occupies its own coordinate slot: it must be connected or lie
    in a hyperplane fixing ITS slot's coordinate, and the two slots are
    distinct axes.  (Without the slot discipline two parallel planes would
    trivially cover any set using only two values on some axis.)  All
    membership assignments are enumerated, overlaps included.
    """
    pts = sorted(point_set.points)
    l = point_set.l

    def usable_axes(members: tuple[GridPoint, ...]) -> set[int]:
        if not members:
            return set(range(l))
        axes = {i for i in range(l) if len({p[i] for p in members}) == 1}
        if _is_connected(members):
            axes = set(range(l))
        return axes

    for assignment in product((0, 1, 2), repeat=len(pts)):
        first = tuple(p for p, a in zip(pts, assignment) if a != 1)
        second = tuple(p for p, a in zip(pts, assignment) if a != 0)
        ax1 = usable_axes(first)
        ax2 = usable_axes(second)
        if any(i != j for i in ax1 for j in ax2):
            return True
    return False


# -- bounded-degree induced-subgraph search ---------------------------------


@dataclass(frozen=True)
class SearchResult:
    size: int
    witness: tuple[GridPoint, ...]
    complete: bool
    explored: int


def bounded_degree_search(l: int, d: int, m: int, mode: str = "path",
                          budget: int | None = None) -> SearchResult:
    """Largest induced path / bounded-degree connected set found in G_l
    with coordinates below ``m``.

    Exhaustive over canonical representatives; when the step budget runs
    out the best set found so far is returned with ``complete=False``.
    """
    if l < 1 or m < 1:
        raise ValueError("l and m must be positive")
    if mode not in ("path", "any-connected"):
        raise ValueError(f"unknown mode {mode!r}")
    state = {"explored": 0, "complete": True, "best": 1,
             "witness": ((0,) * l,)}

    def candidates(seq: list[GridPoint], used: list[int]):
        ranges = [range(min(u + 1, m)) for u in used]
        for cand in product(*ranges):
            yield cand

    def note(seq: list[GridPoint]):
        if len(seq) > state["best"]:
            state["best"] = len(seq)
            state["witness"] = tuple(seq)

    def spend() -> bool:
        state["explored"] += 1
        if budget is not None and state["explored"] >= budget:
            state["complete"] = False
            return False
        return True

    if mode == "path":
        def extend_path(seq: list[GridPoint], used: list[int]):
            if not spend():
                return
            last = seq[-1]
            for cand in candidates(seq, used):
                if not grid_adjacent(cand, last):
                    continue
                if any(cand == p or grid_adjacent(cand, p) for p in seq[:-1]):
                    continue
                new_used = [max(u, c + 1) for u, c in zip(used, cand)]
                seq.append(cand)
                note(seq)
                extend_path(seq, new_used)
                seq.pop()
                if not state["complete"]:
                    return

        start = (0,) * l
        extend_path([start], [1] * l)
    else:
        seen: set[frozenset[GridPoint]] = set()

        def degree_ok(points: list[GridPoint]) -> bool:
            for p in points:
                if sum(grid_adjacent(p, q) for q in points if q != p) > d:
                    return False
            return True

        def extend_conn(seq: list[GridPoint], used: list[int]):
            if not spend():
                return
            for cand in candidates(seq, used):
                if cand in seq:
                    continue
                if not any(grid_adjacent(cand, p) for p in seq):
                    continue
                nxt = seq + [cand]
                if not degree_ok(nxt):
                    continue
                key = frozenset(nxt)
                if key in seen:
                    continue
                seen.add(key)
                new_used = [max(u, c + 1) for u, c in zip(used, cand)]
                note(nxt)
                extend_conn(nxt, new_used)
                if not state["complete"]:
                    return

        extend_conn([(0,) * l], [1] * l)

    return SearchResult(state["best"], state["witness"], state["complete"],
                        state["explored"])


# -- the colouring <-> point-set equivalence --------------------------------


def colouring_from_points(point_set: GridPointSet) -> tuple[EdgeColouring, list[GridPoint]]:
    """Complete graph on the points; an edge takes the smallest shared
    coordinate index + 1, or l+1 when the points differ everywhere."""
    order = sorted(point_set.points)
    n = len(order)
    l = point_set.l

    def colour(u, v):
        axes = shared_axes(order[u], order[v])
        return axes[0] + 1 if axes else l + 1

    host = HostGraph.complete(n)
    return EdgeColouring.build(host, l + 1, colour), order


def points_from_colouring(colouring: EdgeColouring) -> tuple[GridPointSet, dict[GridPoint, frozenset[int]]]:
    """Signature map: vertex -> tuple of its component ids in colours 1..k-1.

    Component ids are 1-based, ordinal by lowest contained vertex.  The
    fibres partition the vertex set; signatures adjacent in G_{k-1} can
    only see colour k between their fibres.
    """
    if not colouring.host.is_complete:
        raise ValueError("host must be complete")
    k = colouring.k
    if k < 2:
        raise ValueError("need at least two colours")
    metrics = MonoMetrics(colouring)
    ids = [[0] * colouring.n for _ in range(k - 1)]
    for c in range(1, k):
        for cid, comp in enumerate(metrics.components(c), start=1):
            for v in comp:
                ids[c - 1][v] = cid
    fibres: dict[GridPoint, set[int]] = {}
    for v in range(colouring.n):
        sig = tuple(ids[c][v] for c in range(k - 1))
        fibres.setdefault(sig, set()).add(v)
    point_set = GridPointSet(k - 1, frozenset(fibres))
    return point_set, {p: frozenset(vs) for p, vs in fibres.items()}


# -- point-set file format ---------------------------------------------------


def format_points(point_set: GridPointSet) -> str:
    out = [str(point_set.l)]
    for p in sorted(point_set.points):
        out.append(" ".join(str(x) for x in p))
    return "\n".join(out) + "\n"


def parse_points(text: str) -> GridPointSet:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty point file")
    l = int(lines[0])
    pts = []
    for ln in lines[1:]:
        coords = tuple(int(tok) for tok in ln.split())
        if len(coords) != l:
            raise ValueError(f"point {coords} has arity != {l}")
        pts.append(coords)
    if not pts:
        raise ValueError("point file lists no points")
    return GridPointSet(l, frozenset(pts))

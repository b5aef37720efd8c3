"""Layer mappings, k-distant sets, and the distant-set cover constructions.

A layer mapping assigns every vertex a pair of coordinates built from BFS
distances in two generating colours; layers whose index points differ by
at least 2 in both coordinates can only see the two reserved colours
across them.  The cover constructions exploit 3- and 7-distant index sets
to assemble full covers with at most three parts; each one verifies its
output before returning and raises ImpossibleByLemmaError with a witness
otherwise.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .covers import Cover, CoverPart, verify_cover
from .errors import ImpossibleByLemmaError
from .graphs import EdgeColouring, MonoMetrics, iter_bits, set_diameter
from .twocolour import MonoSpanning, Split, bipartite_outcome, multipartite_colour

Point = tuple[int, int]

QUAD_COVER_BOUND = 160
TRIPLE7_COVER_BOUND = 160
RICH_COORDINATE_VALUES = 28  # precondition of the 7-distant construction


class LayerMapping:
    """Partition of the vertex set indexed by coordinate pairs.

    ``c1, c2`` are the generating colours (coordinates follow their BFS
    metrics), ``c3, c4`` the reserved pair: any edge between layers that
    are 2-separated in both coordinates uses a reserved colour only.
    """

    __slots__ = ("colouring", "c1", "c2", "c3", "c4", "coords", "points", "_layers")

    def __init__(self, colouring: EdgeColouring, c1: int, c2: int,
                 coords: Sequence[Point]):
        self.colouring = colouring
        self.c1 = c1
        self.c2 = c2
        self.c3, self.c4 = (c for c in range(1, 5) if c not in (c1, c2))
        self.coords = tuple(coords)
        layers: dict[Point, int] = {}
        for v, p in enumerate(self.coords):
            layers[p] = layers.get(p, 0) | (1 << v)
        self.points: tuple[Point, ...] = tuple(sorted(layers))
        self._layers = layers

    @property
    def reserved_pair(self) -> tuple[int, int]:
        return (self.c3, self.c4)

    def layer_mask(self, point: Point) -> int:
        return self._layers[point]

    def layer(self, point: Point) -> frozenset[int]:
        return frozenset(iter_bits(self._layers[point]))

    def union_mask(self, points: Iterable[Point]) -> int:
        m = 0
        for p in points:
            m |= self._layers[p]
        return m

    def union(self, points: Iterable[Point]) -> frozenset[int]:
        return frozenset(iter_bits(self.union_mask(points)))


def build_layer_mapping(colouring: EdgeColouring, c1: int, c2: int,
                        seeds: Sequence[int] = (),
                        value_policy: str = "zero") -> LayerMapping:
    """Run the coordinate-assignment procedure and wrap the result.

    Vertices are processed in seed order (remaining vertices follow in
    index order).  Whenever a vertex still lacks a coordinate, the policy
    supplies a start value for its component: "zero" starts every
    component at 0, "spread" starts far beyond every value used so far,
    which keeps distinct components far apart in that coordinate.
    """
    colouring._check_colour(c1)
    colouring._check_colour(c2)
    if c1 == c2:
        raise ValueError("generating colours must differ")
    if colouring.k != 4:
        raise ValueError("layer mappings need exactly four colours")
    if value_policy not in ("zero", "spread"):
        raise ValueError(f"unknown value policy {value_policy!r}")
    n = colouring.n
    order = list(dict.fromkeys(seeds))
    if any(v < 0 or v >= n for v in order):
        raise ValueError("seed vertex out of range")
    in_seeds = set(order)
    order += [v for v in range(n) if v not in in_seeds]

    metrics = MonoMetrics(colouring)
    coords: list[list[int | None]] = [[None] * n, [None] * n]
    next_base = [0, 0]
    gap = n + 7
    for v in order:
        for j, c in ((0, c1), (1, c2)):
            if coords[j][v] is not None:
                continue
            base = 0 if value_policy == "zero" else next_base[j]
            row = metrics.distances_from(c, v)
            top = base
            for u in range(n):
                d = row[u]
                if d >= 0:
                    val = base + d
                    coords[j][u] = val
                    if val > top:
                        top = val
            next_base[j] = top + gap
    return LayerMapping(colouring, c1, c2,
                        [(coords[0][v], coords[1][v]) for v in range(n)])


# -- distant sets ---------------------------------------------------------


def is_k_distant(points: Iterable[Point], k: int) -> bool:
    pts = list(points)
    return all(abs(a[0] - b[0]) >= k and abs(a[1] - b[1]) >= k
               for a, b in combinations(pts, 2))


def find_k_distant(points: Iterable[Point], k: int, size: int) -> tuple[Point, ...] | None:
    """Lexicographically first k-distant subset of the given cardinality."""
    if k < 1 or size < 1:
        raise ValueError("k and size must be positive")
    pts = sorted(set(points))
    m = len(pts)
    if size > m:
        return None
    if size == 1:
        return (pts[0],)
    compat = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if abs(pts[i][0] - pts[j][0]) >= k and abs(pts[i][1] - pts[j][1]) >= k:
                compat[i] |= 1 << j
                compat[j] |= 1 << i

    def extend(common: int, depth: int, start: int) -> tuple[int, ...] | None:
        if depth == size:
            return ()
        cand = common >> start << start
        while cand:
            lsb = cand & -cand
            i = lsb.bit_length() - 1
            rest = extend(common & compat[i], depth + 1, i + 1)
            if rest is not None:
                return (i,) + rest
            cand ^= lsb
        return None

    got = extend((1 << m) - 1, 0, 0)
    if got is None:
        return None
    return tuple(pts[i] for i in got)


def coordinate_value_counts(points: Iterable[Point]) -> tuple[int, int]:
    pts = list(points)
    return (len({p[0] for p in pts}), len({p[1] for p in pts}))


def has_rich_coordinates(points: Iterable[Point],
                         minimum: int = RICH_COORDINATE_VALUES) -> bool:
    a, b = coordinate_value_counts(points)
    return a >= minimum and b >= minimum


# -- distant-set covers ---------------------------------------------------


def _require_points(lm: LayerMapping, pts: Iterable[Point]) -> None:
    for p in pts:
        if p not in lm._layers:
            raise ValueError(f"{p} is not a layer index point")


def _verified_or_raise(colouring: EdgeColouring, cover: Cover, bound: float,
                       max_parts: int, what: str, witness: dict) -> Cover:
    report = verify_cover(colouring, cover, bound=bound, max_parts=max_parts)
    if not report.valid:
        witness = dict(witness)
        witness["uncovered"] = sorted(report.uncovered)
        witness["parts"] = [(sorted(p.vertices), p.colour, repr(r.diameter))
                            for p, r in zip(cover.parts, report.parts)]
        raise ImpossibleByLemmaError(f"{what}: self-verification failed", witness)
    return cover


def cover_from_dist3_triple(lm: LayerMapping, triple: Sequence[Point]) -> tuple[int, frozenset[int], int]:
    """Reserved colour connecting the three layers of a 3-distant triple.

    Returns (colour, union of the three layers, measured diameter <= 20);
    the measurement is on the full induced subgraph, where within-layer
    edges can only help.
    """
    triple = tuple(sorted(triple))
    if len(triple) != 3 or not is_k_distant(triple, 3):
        raise ValueError("need a 3-distant triple of index points")
    _require_points(lm, triple)
    groups = [sorted(iter_bits(lm.layer_mask(p))) for p in triple]
    c, _ = multipartite_colour(lm.colouring, groups, lm.reserved_pair)
    union = lm.union(triple)
    diam = set_diameter(lm.colouring, c, union)
    if not isinstance(diam, int) or diam > 20:
        raise ImpossibleByLemmaError(
            "triple cover exceeded its diameter bound",
            witness={"triple": triple, "colour": c, "diameter": repr(diam)})
    return c, union, diam


def _classify_against(lm: LayerMapping, anchors: Sequence[Point], point: Point,
                      separation: int = 2) -> list[Point]:
    """Anchors that are ``separation``-distant from ``point``, sorted."""
    return [a for a in anchors
            if abs(a[0] - point[0]) >= separation and abs(a[1] - point[1]) >= separation]


def cover_from_dist3_triple_ext(lm: LayerMapping, triple: Sequence[Point],
                                h_vertices: Iterable[int]) -> Cover:
    """Full cover from a 3-distant triple plus a connected certificate H.

    H must contain two of the triple's layers and be connected in the
    reserved colour other than the triple's own; every other layer
    attaches to the triple core in that colour, to H, or to the third
    layer, giving at most three parts with bound max(40, diam(H) + 20).
    """
    triple = tuple(sorted(triple))
    c, core, _ = cover_from_dist3_triple(lm, triple)
    cprime = lm.c4 if c == lm.c3 else lm.c3
    col = lm.colouring
    h_set = frozenset(h_vertices)
    n3 = set_diameter(col, cprime, h_set)
    if not isinstance(n3, int):
        raise ValueError("certificate subgraph is not connected in its colour")
    anchor_pair = None
    for a, b in combinations(triple, 2):
        if lm.layer(a) <= h_set and lm.layer(b) <= h_set:
            anchor_pair = (a, b)
            break
    if anchor_pair is None:
        raise ValueError("certificate must contain two of the triple's layers")
    third = next(p for p in triple if p not in anchor_pair)
    bound = max(40, n3 + 20)

    p_core: list[Point] = []
    p_h: list[Point] = []
    p_third: list[Point] = []
    for point in lm.points:
        if point in triple:
            continue
        anchors = _classify_against(lm, triple, point)
        if not anchors:
            raise ImpossibleByLemmaError(
                "layer point close to all three of a 3-distant triple",
                witness={"triple": triple, "point": point})
        e = anchors[0]
        out = bipartite_outcome(col, sorted(lm.layer(point)), sorted(lm.layer(e)),
                                lm.reserved_pair)
        if isinstance(out, Split) or out.colour == c:
            p_core.append(point)
        elif e in anchor_pair:
            p_h.append(point)
        else:
            p_third.append(point)

    parts = [CoverPart(core | lm.union(p_core), c)]
    if p_h:
        parts.append(CoverPart(h_set | lm.union(p_h), cprime))
    if p_third:
        parts.append(CoverPart(lm.layer(third) | lm.union(p_third), cprime))
    cover = Cover(tuple(parts), bound)
    return _verified_or_raise(col, cover, bound, 3, "extended triple cover",
                              {"triple": triple, "H": sorted(h_set), "N3": n3})


def cover_from_dist3_quad(lm: LayerMapping, quad: Sequence[Point]) -> Cover:
    """Full cover of the vertex set from a 3-distant quadruple of layers.

    The quadruple's layers connect in a base reserved colour; every other
    layer joins a 2-distant pair of the quadruple in one of the reserved
    colours.  Pair groups in the non-base colour either chain through
    shared anchors into one part or form at most two disjoint parts.
    """
    quad = tuple(sorted(quad))
    if len(quad) != 4 or not is_k_distant(quad, 3):
        raise ValueError("need a 3-distant quadruple of index points")
    _require_points(lm, quad)
    col = lm.colouring
    groups = [sorted(iter_bits(lm.layer_mask(p))) for p in quad]
    cbase, _ = multipartite_colour(col, groups, lm.reserved_pair)
    cbar = lm.c4 if cbase == lm.c3 else lm.c3

    base_points: list[Point] = []
    pair_groups: dict[tuple[Point, Point], list[Point]] = {}
    for point in lm.points:
        if point in quad:
            continue
        anchors = _classify_against(lm, quad, point)
        if len(anchors) < 2:
            raise ImpossibleByLemmaError(
                "layer point close to three of a 3-distant quadruple",
                witness={"quad": quad, "point": point})
        pair = (anchors[0], anchors[1])
        c_pt, _ = multipartite_colour(
            col, [sorted(lm.layer(pair[0])), sorted(lm.layer(pair[1])),
                  sorted(lm.layer(point))], lm.reserved_pair)
        if c_pt == cbase:
            base_points.append(point)
        else:
            pair_groups.setdefault(pair, []).append(point)

    parts = [CoverPart(lm.union(quad) | lm.union(base_points), cbase)]
    if pair_groups:
        pairs = sorted(pair_groups)
        intersecting = any(set(p1) & set(p2)
                           for p1, p2 in combinations(pairs, 2))
        if intersecting or len(pairs) == 1:
            if len(pairs) > 1:
                merged = 0
                for pair in pairs:
                    merged |= lm.union_mask(pair) | lm.union_mask(pair_groups[pair])
                parts.append(CoverPart(frozenset(iter_bits(merged)), cbar))
            else:
                pair = pairs[0]
                parts.append(CoverPart(
                    lm.union(pair) | lm.union(pair_groups[pair]), cbar))
        else:
            if len(pairs) > 2:
                raise ImpossibleByLemmaError(
                    "more than two pairwise-disjoint anchor pairs",
                    witness={"quad": quad, "pairs": pairs})
            for pair in pairs:
                parts.append(CoverPart(
                    lm.union(pair) | lm.union(pair_groups[pair]), cbar))
    cover = Cover(tuple(parts), QUAD_COVER_BOUND)
    return _verified_or_raise(col, cover, QUAD_COVER_BOUND, 3, "quadruple cover",
                              {"quad": quad, "base_colour": cbase})


def _colour_ball_mask(colouring: EdgeColouring, c: int, start_mask: int,
                      radius: int) -> int:
    """Vertices within colour-c distance ``radius`` of the start set."""
    adj = colouring.adj_rows(c)
    seen = start_mask
    frontier = start_mask
    for _ in range(radius):
        nxt = 0
        m = frontier
        while m:
            lsb = m & -m
            nxt |= adj[lsb.bit_length() - 1]
            m ^= lsb
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen


def cover_from_dist7_triple(lm: LayerMapping, triple: Sequence[Point]) -> Cover:
    """Full cover of the vertex set from a 7-distant triple of layers.

    Requires both coordinates of the layer index set to take at least 28
    values.  Either some layer point is 3-distant from the whole triple
    (delegate to the quadruple cover), or a two-sided far-point analysis
    splits the remaining layers into groups that attach to the core ball
    or to one of two far pillars.
    """
    triple = tuple(sorted(triple))
    if len(triple) != 3 or not is_k_distant(triple, 7):
        raise ValueError("need a 7-distant triple of index points")
    _require_points(lm, triple)
    if not has_rich_coordinates(lm.points):
        raise ValueError("layer index set must take >= 28 values per coordinate")
    col = lm.colouring
    points = [p for p in lm.points if p not in triple]

    # A point 3-distant from the whole triple upgrades it to a quadruple.
    for point in points:
        if len(_classify_against(lm, triple, point, separation=3)) == 3:
            return cover_from_dist3_quad(lm, triple + (point,))

    c, core, _ = cover_from_dist3_triple(lm, triple)
    cbar = lm.c4 if c == lm.c3 else lm.c3
    core_mask = lm.union_mask(triple)

    def far_in_coord(point: Point, axis: int, sep: int = 3) -> bool:
        return all(abs(point[axis] - t[axis]) >= sep for t in triple)

    # Points far from the whole triple in one coordinate attach through a
    # fresh 3-distant triple; if that triple connects in the other reserved
    # colour, its union is a certificate for the extended-triple cover.
    attached: dict[Point, int] = {}  # point -> attachment radius to the core

    def attach_far(point: Point, axis: int) -> Cover | None:
        other = 1 - axis
        mates = sorted(
            (t for t in triple if abs(point[other] - t[other]) >= 3))[:2]
        sub = (point, mates[0], mates[1])
        c_sub, union_sub, _ = cover_from_dist3_triple(lm, sub)
        if c_sub == cbar:
            return cover_from_dist3_triple_ext(lm, triple, union_sub)
        attached[point] = 20
        return None

    for point in points:
        for axis in (0, 1):
            if point not in attached and far_in_coord(point, axis):
                done = attach_far(point, axis)
                if done is not None:
                    return done

    # Two-sided pillars: X is first-coordinate far (and second-close to
    # exactly one anchor), Y is second-coordinate far.
    x_cands = [p for p in points if far_in_coord(p, 0, sep=5)]
    y_cands = [p for p in points if far_in_coord(p, 1, sep=5)]
    if not x_cands or not y_cands:
        raise ImpossibleByLemmaError(
            "rich coordinates but no far point in some coordinate",
            witness={"triple": triple})
    x_pt = x_cands[0]
    a_anchor = next(t for t in triple if abs(x_pt[1] - t[1]) <= 2)
    y_pt = next((p for p in y_cands
                 if not abs(p[0] - a_anchor[0]) <= 2), None)
    if y_pt is None:
        # Every second-far point is first-close to the same anchor as X,
        # which yields a 3-distant quadruple with X and the other anchors.
        y_pt = y_cands[0]
        others = tuple(t for t in triple if t != a_anchor)
        return cover_from_dist3_quad(lm, (x_pt, y_pt) + others)
    b_anchor = next(t for t in triple if abs(y_pt[0] - t[0]) <= 2)
    c_anchor = next(t for t in triple if t not in (a_anchor, b_anchor))

    def close(val: int, ref: int) -> bool:
        return abs(val - ref) <= 2

    group1: list[Point] = []  # first-close to B, second-close to A
    group2: list[Point] = []  # first-close to C, second-close to A
    group3: list[Point] = []  # first-close to B, second-close to C
    for point in points:
        if point in attached or point in (x_pt, y_pt):
            continue
        e1 = next((t for t in triple if close(point[0], t[0])), None)
        e2 = next((t for t in triple if close(point[1], t[1])), None)
        if e1 is None or e2 is None:
            raise ImpossibleByLemmaError(
                "unclassified layer point in 7-distant analysis",
                witness={"triple": triple, "point": point})
        if e1 == e2:
            others = tuple(t for t in triple if t != e1)
            sub = (point,) + others
            c_sub, union_sub, _ = cover_from_dist3_triple(lm, sub)
            if c_sub == cbar:
                return cover_from_dist3_triple_ext(lm, triple, union_sub)
            attached[point] = 20
        elif (e1, e2) in ((a_anchor, b_anchor), (c_anchor, b_anchor),
                          (a_anchor, c_anchor)):
            sub = tuple(sorted((point, x_pt, y_pt)))
            if not is_k_distant(sub, 3):
                raise ImpossibleByLemmaError(
                    "pillar triple not 3-distant",
                    witness={"triple": triple, "point": point,
                             "pillars": (x_pt, y_pt)})
            c_sub, union_sub, _ = cover_from_dist3_triple(lm, sub)
            if c_sub == cbar:
                h = _colour_ball_mask(col, c, core_mask, 20)
                return cover_from_dist3_triple_ext(lm, sub, frozenset(iter_bits(h)))
            attached[point] = 40
        elif (e1, e2) == (b_anchor, a_anchor):
            group1.append(point)
        elif (e1, e2) == (c_anchor, a_anchor):
            group2.append(point)
        elif (e1, e2) == (b_anchor, c_anchor):
            group3.append(point)
        else:
            raise ImpossibleByLemmaError(
                "impossible closeness pattern",
                witness={"triple": triple, "point": point, "pattern": (e1, e2)})

    v_mask = _colour_ball_mask(col, c, core_mask, 40)
    v_set = frozenset(iter_bits(v_mask))
    parts = [CoverPart(v_set, c)]
    witness = {"triple": triple, "pillars": (x_pt, y_pt),
               "groups": [len(group1), len(group2), len(group3)]}

    def pillar_part(group: list[Point], pillar: Point, name: str) -> CoverPart | None:
        union_mask = lm.union_mask(group)
        if union_mask & ~v_mask == 0:
            return None
        out = bipartite_outcome(col, sorted(iter_bits(union_mask)),
                                sorted(lm.layer(pillar)), lm.reserved_pair)
        if isinstance(out, MonoSpanning) and out.colour == cbar:
            return CoverPart(frozenset(iter_bits(union_mask | lm.layer_mask(pillar))), cbar)
        raise ImpossibleByLemmaError(
            f"far group {name} neither absorbed nor pillar-connected", witness)

    part2 = pillar_part(group2, y_pt, "2") if group2 else None
    part3 = pillar_part(group3, x_pt, "3") if group3 else None
    if part2 is not None and part3 is not None:
        both = sorted(iter_bits(lm.union_mask(group2))), sorted(iter_bits(lm.union_mask(group3)))
        out = bipartite_outcome(col, both[0], both[1], lm.reserved_pair)
        if isinstance(out, MonoSpanning) and out.colour == cbar:
            parts.append(CoverPart(part2.vertices | part3.vertices, cbar))
        elif isinstance(out, MonoSpanning):
            parts.append(CoverPart(frozenset(iter_bits(
                lm.union_mask(group2) | lm.union_mask(group3))), c))
        else:
            parts.append(CoverPart(part2.vertices | part3.vertices, cbar))
    elif part2 is not None:
        parts.append(part2)
    elif part3 is not None:
        parts.append(part3)

    if group1:
        union1 = lm.union_mask(group1)
        if union1 & ~v_mask:
            out = bipartite_outcome(col, sorted(iter_bits(union1)),
                                    sorted(lm.layer(c_anchor)), lm.reserved_pair)
            if isinstance(out, MonoSpanning):
                parts.append(CoverPart(
                    frozenset(iter_bits(union1 | lm.layer_mask(c_anchor))), out.colour))
            else:
                raise ImpossibleByLemmaError(
                    "near group neither absorbed nor anchor-connected", witness)

    cover = Cover(tuple(parts), TRIPLE7_COVER_BOUND)
    return _verified_or_raise(col, cover, TRIPLE7_COVER_BOUND, 3,
                              "7-distant triple cover", witness)

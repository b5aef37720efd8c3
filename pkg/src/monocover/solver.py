"""End-to-end cover construction for 4-colourings of complete graphs.

The solver runs a cascade of verified stages: a single spanning colour of
small diameter; the three-small-colours reduction through the
connectivity cover; layer mappings over all colour pairs hunting distant
sets; the all-colours-connected analysis; the intersecting-components
analysis; the disjoint-component ball cover; and, last, the
connectivity-only cover, which is flagged because reaching it means no
bounded-diameter branch closed the instance.  No stage ever returns an
unverified cover; anomalies raised by inner constructions are recorded in
the trace and the cascade moves on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .covers import Cover, CoverPart, verify_cover
from .errors import ImpossibleByLemmaError
from .graphs import EdgeColouring, MonoMetrics, iter_bits
from .grid import cover_G3, points_from_colouring
from .layers import (build_layer_mapping, cover_from_dist7_triple,
                     cover_from_dist3_quad, find_k_distant,
                     has_rich_coordinates, is_k_distant)

COVER_BOUND = 160
SMALL_DIAMETER = 160
CONNECTED_CASE_MIN_DIAMETER = 480
DISJOINT_MIN_DIAMETER = 30

BRANCH_SINGLE_COLOUR = "SingleColour"
BRANCH_SMALL_DIAM = "SmallDiam"
BRANCH_LAYER_QUAD = "LayerQuad"
BRANCH_LAYER_TRIPLE7 = "LayerTriple7"
BRANCH_SINGLE_COMPONENT = "SingleComponent"
BRANCH_INTERSECTING = "Intersecting"
BRANCH_DISJOINT = "DisjointCorollary"
BRANCH_FALLBACK = "ConnectivityFallback"


@dataclass
class SolveTrace:
    branch: str
    details: dict = field(default_factory=dict)
    anomalies: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"branch": self.branch, "details": self.details,
                "anomalies": list(self.anomalies)}


def _require_k4_complete(colouring: EdgeColouring) -> None:
    if colouring.k != 4:
        raise ValueError("solver expects exactly four colours")
    if not colouring.host.is_complete:
        raise ValueError("solver expects a complete host")


def _verified(colouring, parts, bound, what, max_parts=3) -> Cover:
    cover = Cover(tuple(parts), bound)
    report = verify_cover(colouring, cover, bound=bound, max_parts=max_parts)
    if not report.valid:
        raise ImpossibleByLemmaError(
            f"{what}: cover failed verification",
            witness={"uncovered": sorted(report.uncovered),
                     "parts": [(sorted(p.vertices)[:20], p.colour,
                                repr(r.diameter))
                               for p, r in zip(cover.parts, report.parts)]})
    return cover


# -- connectivity-only cover ------------------------------------------------


def gyarfas_connectivity_cover(colouring: EdgeColouring) -> Cover:
    """Three monochromatic connected parts covering the vertex set.

    Works through the signature point set: hyperplane parts pull back to
    whole components of the plane's colour, connected parts to fibre
    unions in colour 4; a singleton connected part is promoted to the
    full colour-1 component of its fibre.  Connectivity only, so the
    claimed bound is infinite.
    """
    _require_k4_complete(colouring)
    point_set, fibres = points_from_colouring(colouring)
    grid_parts = cover_G3(point_set)
    metrics = MonoMetrics(colouring)
    parts = []
    for gp in grid_parts:
        if gp.kind == "hyperplane":
            c = gp.axis + 1
            comp = metrics.components(c)[gp.value - 1]
            parts.append(CoverPart(frozenset(comp), c))
        elif len(gp.members) == 1:
            sig = next(iter(gp.members))
            comp = metrics.components(1)[sig[0] - 1]
            parts.append(CoverPart(frozenset(comp), 1))
        else:
            verts = frozenset().union(*(fibres[p] for p in gp.members))
            parts.append(CoverPart(verts, 4))
    return _verified(colouring, parts, math.inf, "connectivity cover")


# -- stage 1: three colours of small diameter --------------------------------


def reduce_small_diameters(colouring: EdgeColouring,
                           n1: int = SMALL_DIAMETER) -> Cover | None:
    """Cover with bound max(n1, 30) when three colours have all components
    of diameter at most n1.

    Edges of the remaining colour whose ends share a small-colour
    component are recoloured to the smallest such colour; that shrinks
    the remaining colour's components enough that any of its geodesics
    embeds as an induced path of signatures, and the connectivity cover
    of the modified colouring pulls back with bounded diameters.
    """
    _require_k4_complete(colouring)
    metrics = MonoMetrics(colouring)
    small = [c for c in range(1, 5) if metrics.colour_diameter(c) <= n1]
    if len(small) < 3:
        return None
    smalls = small[:3]
    big = next(c for c in range(1, 5) if c not in smalls)
    ids = {c: [0] * colouring.n for c in smalls}
    for c in smalls:
        for cid, comp in enumerate(metrics.components(c)):
            for v in comp:
                ids[c][v] = cid
    changes = {}
    for u, v, c in colouring.edges():
        if c != big:
            continue
        for cs in smalls:
            if ids[cs][u] == ids[cs][v]:
                changes[(u, v)] = cs
                break
    modified = colouring.recoloured(changes) if changes else colouring
    perm = {smalls[0]: 1, smalls[1]: 2, smalls[2]: 3, big: 4}
    relabeled = modified.with_colours_permuted(perm)
    conn = gyarfas_connectivity_cover(relabeled)
    inverse = {new: old for old, new in perm.items()}
    parts = [CoverPart(p.vertices, inverse[p.colour]) for p in conn.parts]
    return _verified(colouring, parts, max(n1, 30), "small-diameter reduction")


# -- 7-distant delegation helper ---------------------------------------------


def _try_distant_triple(lm, coords_triple, anomalies, note) -> Cover | None:
    triple = tuple(sorted(set(coords_triple)))
    if len(triple) != 3 or not is_k_distant(triple, 7):
        return None
    if not has_rich_coordinates(lm.points):
        anomalies.append(f"{note}: 7-distant triple found but coordinates "
                         "take fewer than 28 values")
        return None
    try:
        return cover_from_dist7_triple(lm, triple)
    except (ValueError, ImpossibleByLemmaError) as exc:
        anomalies.append(f"{note}: {exc}")
        return None


# -- stage 3: every colour connected ------------------------------------------


def solve_connected_case(colouring: EdgeColouring,
                         min_diameter: int = CONNECTED_CASE_MIN_DIAMETER,
                         anomalies: list | None = None) -> Cover | None:
    """Cover when all four colours induce connected spanning subgraphs.

    Only engages when every colour's diameter exceeds ``min_diameter``;
    below that other stages are responsible.  Searches for a pair at
    colour-1 distance 25..27 and colour-2 distance >= 40: absence yields
    an explicit three-ball cover, presence walks a colour-2 geodesic
    until a distance pattern realises either a 7-distant triple or a
    two-ball cover.
    """
    _require_k4_complete(colouring)
    if anomalies is None:
        anomalies = []
    metrics = MonoMetrics(colouring)
    n = colouring.n
    for c in range(1, 5):
        if len(metrics.component_masks(c)) > 1:
            return None
    if any(metrics.colour_diameter(c) <= min_diameter for c in range(1, 5)):
        return None

    pair = None
    for x in range(n):
        d1 = metrics.distances_from(1, x)
        d2 = metrics.distances_from(2, x)
        for y in range(n):
            if d1[y] in (25, 26, 27) and d2[y] >= 40:
                pair = (x, y)
                break
        if pair:
            break

    if pair is None:
        # every colour-1 edge has small colour-2 distance between its ends,
        # so three balls around any vertex cover everything
        x = 0
        parts = [CoverPart(metrics.ball(2, x, 78), 2),
                 CoverPart(metrics.ball(3, x, 1), 3),
                 CoverPart(metrics.ball(4, x, 1), 4)]
        return _verified(colouring, parts, COVER_BOUND, "connected case, no pair")

    x, y = pair
    path = _geodesic(colouring, metrics, 2, x, y)
    r = len(path) - 2
    k = (r - 10) // 10
    d1xy = metrics.distances_from(1, x)[y]
    d2xy = len(path) - 1
    lm = build_layer_mapping(colouring, 1, 2, seeds=[x])
    for i in range(1, k + 1):
        z = path[10 * i]
        cover = _try_distant_triple(
            lm, ((0, 0), (d1xy, d2xy), lm.coords[z]), anomalies,
            "connected case, geodesic point")
        if cover is not None:
            return cover

    def close_to_x(v):
        return metrics.distances_from(1, x)[v] <= 6

    if not close_to_x(path[10]):
        u, v = x, path[10]
    else:
        u = v = None
        for i in range(1, k):
            if not close_to_x(path[10 * (i + 1)]):
                u, v = path[10 * i], path[10 * (i + 1)]
                break
        if u is None:
            u, v = path[10 * k], y
    return _realize_contradiction_pair(colouring, u, v, anomalies)


def _geodesic(colouring, metrics, c, x, y) -> list[int]:
    dist = metrics.distances_from(c, x)
    if dist[y] < 0:
        raise ValueError("no path between the endpoints")
    path = [y]
    adj = colouring.adj_rows(c)
    cur = y
    while cur != x:
        want = dist[cur] - 1
        nxt = None
        for w in iter_bits(adj[cur]):
            if dist[w] == want:
                nxt = w
                break
        path.append(nxt)
        cur = nxt
    path.reverse()
    return path


def _realize_contradiction_pair(colouring, u, v, anomalies) -> Cover:
    """Either some vertex completes a 7-distant triple with u and v, or two
    balls around u cover everything."""
    lm = build_layer_mapping(colouring, 1, 2, seeds=[u])
    du, dv = lm.coords[u], lm.coords[v]
    for z in range(colouring.n):
        cover = _try_distant_triple(lm, (du, dv, lm.coords[z]), anomalies,
                                    "contradiction pair")
        if cover is not None:
            return cover
    metrics = MonoMetrics(colouring)
    parts = [CoverPart(metrics.ball(1, u, 56), 1),
             CoverPart(metrics.ball(2, u, 26), 2)]
    return _verified(colouring, parts, COVER_BOUND, "contradiction pair balls")


# -- stage 4: intersecting components -----------------------------------------


def solve_intersecting_case(colouring: EdgeColouring,
                            big_diameter: int = SMALL_DIAMETER,
                            anomalies: list | None = None) -> Cover | None:
    """Cover when every pair of different-colour components, one of them of
    diameter at least 30, intersects.

    Finds a colour with a large component, a different colour with two or
    more components, and a vertex pair straddling the latter at moderate
    distance in the former; every vertex then joins a layer-mapping
    7-distant triple or one of three explicit balls.
    """
    _require_k4_complete(colouring)
    if anomalies is None:
        anomalies = []
    metrics = MonoMetrics(colouring)
    n = colouring.n

    comp_data = []
    for c in range(1, 5):
        masks = metrics.component_masks(c)
        diams = metrics.component_diameters(c)
        comp_data.append((masks, diams))
    for c1 in range(1, 5):
        for c2 in range(c1 + 1, 5):
            for m1, d1 in zip(*comp_data[c1 - 1]):
                for m2, d2 in zip(*comp_data[c2 - 1]):
                    if (d1 >= DISJOINT_MIN_DIAMETER or
                            d2 >= DISJOINT_MIN_DIAMETER) and m1 & m2 == 0:
                        return None  # a disjoint pair: the next stage's case

    multi = [c for c in range(1, 5) if len(comp_data[c - 1][0]) >= 2]
    bigs = [c for c in range(1, 5)
            if max(comp_data[c - 1][1]) > big_diameter]
    c_prime = c_big = None
    for cp in multi:
        cands = [c for c in bigs if c != cp]
        if cands:
            c_prime, c_big = cp, cands[0]
            break
    if c_prime is None:
        return None

    prime_id = [0] * n
    for cid, mask in enumerate(comp_data[c_prime - 1][0]):
        for w in iter_bits(mask):
            prime_id[w] = cid

    pair = None
    for x in range(n):
        row = metrics.distances_from(c_big, x)
        for y in range(n):
            if 10 <= row[y] <= 40 and prime_id[x] != prime_id[y]:
                pair = (x, y)
                break
        if pair:
            break
    if pair is None:
        # a close straddling pair plus a deep vertex of the big colour
        for x1 in range(n):
            row = metrics.distances_from(c_big, x1)
            for x2 in range(n):
                if 0 <= row[x2] < 10 and prime_id[x1] != prime_id[x2]:
                    for y in range(n):
                        if row[y] == 25:
                            if prime_id[y] != prime_id[x1]:
                                pair = (x1, y)
                            elif prime_id[y] != prime_id[x2]:
                                pair = (x2, y)
                            if pair:
                                break
                if pair:
                    break
            if pair:
                break
    if pair is None:
        return None

    x, y = pair
    ball50 = metrics.ball_mask(c_big, x, 50)
    if ball50 == (1 << n) - 1:
        return _verified(colouring,
                         [CoverPart(frozenset(iter_bits(ball50)), c_big)],
                         COVER_BOUND, "intersecting case, one ball")
    z = next(w for w in range(n) if not ball50 >> w & 1)
    lm = build_layer_mapping(colouring, c_big, c_prime, seeds=[x, y, z],
                             value_policy="spread")
    dx, dy = lm.coords[x], lm.coords[y]
    for w in range(n):
        cover = _try_distant_triple(lm, (dx, dy, lm.coords[w]), anomalies,
                                    "intersecting case")
        if cover is not None:
            return cover
    parts = [CoverPart(frozenset(iter_bits(ball50)), c_big),
             CoverPart(metrics.ball(c_prime, x, 6), c_prime),
             CoverPart(metrics.ball(c_prime, y, 6), c_prime)]
    cover = Cover(tuple(parts), COVER_BOUND)
    report = verify_cover(colouring, cover, bound=COVER_BOUND, max_parts=3)
    if report.valid:
        return cover
    anomalies.append("intersecting case: ball cover failed verification")
    return None


# -- stage 5: disjoint components ----------------------------------------------


def disjoint_corollary(colouring: EdgeColouring,
                       min_diameter: int = DISJOINT_MIN_DIAMETER,
                       anomalies: list | None = None) -> Cover | None:
    """Cover from a large component disjoint from one of a different colour.

    If every far pair of the component is close in the other colour, three
    balls around any of its vertices cover everything; otherwise a far
    pair plus any vertex of the disjoint component seeds a layer mapping
    whose coordinates are spread far apart, handing over a 7-distant
    triple.
    """
    _require_k4_complete(colouring)
    if anomalies is None:
        anomalies = []
    metrics = MonoMetrics(colouring)
    n = colouring.n
    for c in range(1, 5):
        masks = metrics.component_masks(c)
        diams = metrics.component_diameters(c)
        for mask, diam in zip(masks, diams):
            if diam < min_diameter:
                continue
            for c2 in range(1, 5):
                if c2 == c:
                    continue
                for mask2 in metrics.component_masks(c2):
                    if mask & mask2:
                        continue
                    verts = list(iter_bits(mask))
                    near = True
                    far_pair = None
                    for u in verts:
                        row_c = metrics.distances_from(c, u)
                        row_2 = metrics.distances_from(c2, u)
                        for v in verts:
                            if not 0 <= row_2[v] <= 12:
                                near = False
                            if row_c[v] >= 7 and not 0 <= row_2[v] <= 6:
                                far_pair = far_pair or (u, v)
                    if near:
                        v0 = verts[0]
                        others = [d for d in range(1, 5) if d not in (c, c2)]
                        parts = [CoverPart(metrics.ball(c2, v0, 12), c2),
                                 CoverPart(metrics.ball(others[0], v0, 1), others[0]),
                                 CoverPart(metrics.ball(others[1], v0, 1), others[1])]
                        cover = Cover(tuple(parts), COVER_BOUND)
                        report = verify_cover(colouring, cover,
                                              bound=COVER_BOUND, max_parts=3)
                        if report.valid:
                            return cover
                        anomalies.append("disjoint corollary: ball cover "
                                         "failed verification")
                        continue
                    if far_pair is None:
                        continue
                    x, y = far_pair
                    z = next(iter_bits(mask2))
                    lm = build_layer_mapping(colouring, c, c2,
                                             seeds=[x, y, z],
                                             value_policy="spread")
                    cover = _try_distant_triple(
                        lm, (lm.coords[x], lm.coords[y], lm.coords[z]),
                        anomalies, "disjoint corollary")
                    if cover is not None:
                        return cover
    return None


# -- the cascade -----------------------------------------------------------------


def solve4(colouring: EdgeColouring) -> tuple[Cover, SolveTrace]:
    """Cover a 4-colouring of a complete graph by at most three parts.

    Stages run in a fixed order and each returned cover has been verified
    at bound 160 (the last-resort connectivity cover at bound infinity).
    Anomalies from inner constructions are never fatal: they are recorded
    in the trace and the cascade continues.
    """
    _require_k4_complete(colouring)
    metrics = MonoMetrics(colouring)
    anomalies: list[str] = []
    n = colouring.n

    for c in range(1, 5):
        if metrics.spans_within_diameter(c, COVER_BOUND):
            cover = Cover((CoverPart(frozenset(range(n)), c),), COVER_BOUND)
            return cover, SolveTrace(BRANCH_SINGLE_COLOUR, {"colour": c},
                                     tuple(anomalies))

    try:
        cover = reduce_small_diameters(colouring, SMALL_DIAMETER)
        if cover is not None:
            return cover, SolveTrace(BRANCH_SMALL_DIAM,
                                     {"n1": SMALL_DIAMETER}, tuple(anomalies))
    except ImpossibleByLemmaError as exc:
        anomalies.append(f"small-diameter reduction: {exc}")

    for c1, c2 in combinations(range(1, 5), 2):
        for policy in ("zero", "spread"):
            lm = build_layer_mapping(colouring, c1, c2, value_policy=policy)
            quad = find_k_distant(lm.points, 3, 4)
            if quad is not None:
                try:
                    cover = cover_from_dist3_quad(lm, quad)
                    detail = {"pair": (c1, c2), "policy": policy,
                              "distant_set": [list(p) for p in quad]}
                    return cover, SolveTrace(BRANCH_LAYER_QUAD, detail,
                                             tuple(anomalies))
                except ImpossibleByLemmaError as exc:
                    anomalies.append(f"layer quad ({c1},{c2},{policy}): {exc}")
            triple = find_k_distant(lm.points, 7, 3)
            if triple is not None and has_rich_coordinates(lm.points):
                try:
                    cover = cover_from_dist7_triple(lm, triple)
                    detail = {"pair": (c1, c2), "policy": policy,
                              "distant_set": [list(p) for p in triple]}
                    return cover, SolveTrace(BRANCH_LAYER_TRIPLE7, detail,
                                             tuple(anomalies))
                except (ValueError, ImpossibleByLemmaError) as exc:
                    anomalies.append(f"layer triple ({c1},{c2},{policy}): {exc}")

    try:
        cover = solve_connected_case(colouring, anomalies=anomalies)
        if cover is not None:
            return cover, SolveTrace(BRANCH_SINGLE_COMPONENT, {},
                                     tuple(anomalies))
    except ImpossibleByLemmaError as exc:
        anomalies.append(f"connected case: {exc}")

    try:
        cover = solve_intersecting_case(colouring, anomalies=anomalies)
        if cover is not None:
            return cover, SolveTrace(BRANCH_INTERSECTING, {},
                                     tuple(anomalies))
    except ImpossibleByLemmaError as exc:
        anomalies.append(f"intersecting case: {exc}")

    try:
        cover = disjoint_corollary(colouring, anomalies=anomalies)
        if cover is not None:
            return cover, SolveTrace(BRANCH_DISJOINT, {}, tuple(anomalies))
    except ImpossibleByLemmaError as exc:
        anomalies.append(f"disjoint corollary: {exc}")

    cover = gyarfas_connectivity_cover(colouring)
    diag = {"colour_diameters": {c: metrics.colour_diameter(c)
                                 for c in range(1, 5)},
            "component_counts": {c: len(metrics.component_masks(c))
                                 for c in range(1, 5)}}
    return cover, SolveTrace(BRANCH_FALLBACK, diag, tuple(anomalies))

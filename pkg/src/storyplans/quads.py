"""Quadrilateral predicates: good edges, nesting, and the precedes relation.

A Quad is a simple quadrilateral with exact rational corners, normalized
to CCW traversal.  Edge k (1-indexed) joins corners k and k+1 (cyclic).

The good-edge decision enumerates one representative point per open cell
of the arrangement of the six corner-pair lines; the full predicate
(strictly outside + sees all four corners + probe next to the edge lies
in the outer face) is constant on each cell because the order type of
{apex, corners} is fixed there.  All of this runs on homogeneous integer
triples for speed; witnesses are returned as exact rational points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .geom import (Hom, HalfPlane, Point, PointLocation, SegmentKind,
                   arrangement_cell_representatives_hom, convex_hull,
                   dist2_point_polygon, hom_normalize, hom_on_segment,
                   hom_orient, intersect_lines_hom, line_eval_hom,
                   line_through, line_through_hom, orientation,
                   point_from_hom, point_in_polygon, segment_relation, _sign,
                   pt)


@dataclass(frozen=True)
class Quad:
    corners: tuple[Point, Point, Point, Point]

    def edge(self, k: int) -> tuple[Point, Point]:
        """Edge k, 1-indexed: corners k -> k mod 4 + 1."""
        if k not in (1, 2, 3, 4):
            raise ValueError(f"edge index {k} not in [1,4]")
        return (self.corners[k - 1], self.corners[k % 4])

    def polygon(self) -> list[Point]:
        return list(self.corners)


def make_quad(points: Sequence) -> Quad:
    """Validate and CCW-normalize four corners given in boundary order."""
    if len(points) != 4:
        raise ValueError("a quad needs exactly 4 corners")
    corners = tuple(pt(x, y) for x, y in points)
    if len(set(corners)) != 4:
        raise ValueError("corners must be distinct")
    for i in range(4):
        a, b, c = corners[i], corners[(i + 1) % 4], corners[(i + 2) % 4]
        if orientation(a, b, c) == 0:
            raise ValueError("three consecutive corners are collinear")
    segs = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    for i, j in ((0, 2), (1, 3)):
        if segment_relation(segs[i], segs[j]).kind is not SegmentKind.DISJOINT:
            raise ValueError("quad boundary is self-crossing")
    for i in range(4):
        rel = segment_relation(segs[i], segs[(i + 1) % 4]).kind
        if rel is not SegmentKind.SHARED_ENDPOINT_ONLY:
            raise ValueError("quad boundary is self-crossing")
    # shoelace sign; reverse keeps corner 1 first
    area2 = sum(corners[i][0] * corners[(i + 1) % 4][1]
                - corners[(i + 1) % 4][0] * corners[i][1] for i in range(4))
    if area2 < 0:
        corners = (corners[0], corners[3], corners[2], corners[1])
    return Quad(corners)


class QuadKind(Enum):
    CONVEX = "convex"
    CONCAVE = "concave"


@dataclass(frozen=True)
class QuadClass:
    kind: QuadKind
    reflex_corner: Optional[int] = None  # 1-indexed


def classify_quad(q: Quad) -> QuadClass:
    reflex = [i + 1 for i in range(4)
              if orientation(q.corners[i - 1], q.corners[i],
                             q.corners[(i + 1) % 4]) < 0]
    if not reflex:
        return QuadClass(QuadKind.CONVEX)
    assert len(reflex) == 1
    return QuadClass(QuadKind.CONCAVE, reflex[0])


def outer_halfplane(q: Quad, k: int) -> HalfPlane:
    """Open half-plane on the locally-outer side of edge k's line.

    The quad is CCW, so its interior lies locally left of the directed
    edge; the outer half-plane is the right side.
    """
    u, v = q.edge(k)
    line = line_through(u, v)
    dx, dy = v[0] - u[0], v[1] - u[1]
    left = Point(u[0] - dy, u[1] + dx)
    inner_sign = _sign_val(line.a * left[0] + line.b * left[1] + line.c)
    return HalfPlane(line, -inner_sign)


def _sign_val(v) -> int:
    return (v > 0) - (v < 0)


def sees_all_vertices(p: Point, q: Quad) -> bool:
    """Straight-line visibility of all four corners from p."""
    p = pt(p[0], p[1])
    if point_in_polygon(p, q.polygon(), check_simple=False) is PointLocation.BOUNDARY:
        raise ValueError("point lies on the quad boundary")
    corners = q.corners
    for vi, v in enumerate(corners):
        for w in corners:
            if w != v and _strictly_between(w, p, v):
                return False
        for k in range(4):
            a, b = corners[k], corners[(k + 1) % 4]
            if v in (a, b):
                continue
            if segment_relation((p, v), (a, b)).kind is not SegmentKind.DISJOINT:
                return False
    return True


def _strictly_between(w: Point, a: Point, b: Point) -> bool:
    if orientation(w, a, b) != 0:
        return False
    if a[0] != b[0]:
        lo, hi = sorted((a[0], b[0]))
        return lo < w[0] < hi
    lo, hi = sorted((a[1], b[1]))
    return lo < w[1] < hi


# ---------------------------------------------------------------------------
# homogeneous internals (hot path)


def _hom_corners(q: Quad) -> tuple[list[Hom], int]:
    """Corners scaled to a common integer grid, as (x, y, 1) triples."""
    denoms = [c[i].denominator for c in q.corners for i in range(2)]
    scale = math.lcm(*denoms)
    out = []
    for c in q.corners:
        out.append((int(c[0] * scale), int(c[1] * scale), 1))
    return out, scale


def hom_point_in_polygon(p: Hom, poly: Sequence[Hom]) -> int:
    """+1 inside, 0 on boundary, -1 outside (winding number, exact)."""
    n = len(poly)
    for i in range(n):
        if hom_on_segment(p, poly[i], poly[(i + 1) % n]):
            return 0
    px, py, pw = p
    wn = 0
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        ay = _sign(a[1] * pw - py * a[2])
        by = _sign(b[1] * pw - py * b[2])
        if ay <= 0 and by > 0:
            if hom_orient(a, b, p) > 0:
                wn += 1
        elif ay > 0 and by <= 0:
            if hom_orient(a, b, p) < 0:
                wn -= 1
    return 1 if wn != 0 else -1


def _hom_sees(apex: Hom, ic: Sequence[Hom]) -> bool:
    for vi in range(4):
        v = ic[vi]
        for wi in range(4):
            if wi != vi and hom_on_segment(ic[wi], apex, v, closed=False):
                return False
        for k in range(4):
            if k == vi or (k + 1) % 4 == vi:
                continue
            a, b = ic[k], ic[(k + 1) % 4]
            o1 = hom_orient(apex, v, a)
            o2 = hom_orient(apex, v, b)
            o3 = hom_orient(a, b, apex)
            o4 = hom_orient(a, b, v)
            if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
                return False
            # touching cases: an edge endpoint on the sight segment is the
            # corner-on-segment case above; v on the edge is impossible for
            # a simple quad; apex on the edge is excluded by precondition.
            if o4 == 0 and hom_on_segment(v, a, b):
                return False
    return True


def _dist2_pair_point(p: Hom, x: Hom) -> tuple[int, int]:
    px, py, pw = p
    xx, xy, xw = x
    n = (px * xw - xx * pw) ** 2 + (py * xw - xy * pw) ** 2
    return (n, (pw * xw) ** 2)


def _dist2_pair_segment(p: Hom, a: Hom, b: Hom) -> tuple[int, int]:
    px, py, pw = p
    ax, ay, aw = a
    bx, by, bw = b
    ux = px * aw - ax * pw
    uy = py * aw - ay * pw
    vx = bx * aw - ax * bw
    vy = by * aw - ay * bw
    dot = ux * vx + uy * vy
    len2 = vx * vx + vy * vy
    if dot <= 0:
        return _dist2_pair_point(p, a)
    if dot * bw >= len2 * pw:
        return _dist2_pair_point(p, b)
    cross = ux * vy - uy * vx
    return (cross * cross, pw * pw * aw * aw * len2)


def _pair_lt(p1: tuple[int, int], p2: tuple[int, int]) -> bool:
    return p1[0] * p2[1] < p2[0] * p1[1]


def _quad_cycles(ic: Sequence[Hom], apex: Hom) -> list[list[Hom]]:
    """All 13 simple cycles of the quad-plus-apex graph, as polygons."""
    cycles = [list(ic)]
    for i in range(4):
        for j in range(i + 1, 4):
            fwd = list(range(i, j + 1))
            back = [i]
            k = i
            while k != j:
                k = (k - 1) % 4
                back.append(k)
            for arc in (fwd, back):
                if len(arc) >= 2:
                    cycles.append([apex] + [ic[k] for k in arc])
    return cycles


def _hom_outer_face_edges(ic: Sequence[Hom], apex: Hom) -> set[int]:
    """1-indexed quad edges on the outer face of the quad+apex drawing.

    For each edge, a probe just outside its midpoint (displaced along the
    outer normal by less than half the distance to everything else) is
    tested for enclosure by each simple cycle of the drawing.
    """
    segments = [(ic[k], ic[(k + 1) % 4]) for k in range(4)]
    segments += [(apex, ic[k]) for k in range(4)]
    lines = []
    for a, b in segments:
        lines.append(line_through_hom(a, b))
    inters = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i] != lines[j]:
                h = intersect_lines_hom(lines[i], lines[j])
                if h is not None:
                    inters.append(h)
    cycles = _quad_cycles(ic, apex)
    out: set[int] = set()
    for k in range(4):
        a, b = ic[k], ic[(k + 1) % 4]
        m = (a[0] + b[0], a[1] + b[1], 2)
        dx, dy = b[0] - a[0], b[1] - a[1]
        rx, ry = dy, -dx  # right normal: outward for a CCW quad
        eps: Optional[tuple[int, int]] = None
        for si, seg in enumerate(segments):
            if si == k:
                continue
            d2 = _dist2_pair_segment(m, seg[0], seg[1])
            if d2[0] != 0 and (eps is None or _pair_lt(d2, eps)):
                eps = d2
        for h in inters:
            d2 = _dist2_pair_point(m, h)
            if d2[0] != 0 and (eps is None or _pair_lt(d2, eps)):
                eps = d2
        assert eps is not None
        eps = (eps[0], eps[1] * 4)  # (eps/2)^2
        rlen2 = rx * rx + ry * ry
        den = 1
        while rlen2 * eps[1] >= eps[0] * den * den:
            den *= 2
        probe = hom_normalize((m[0] * den + rx * m[2], m[1] * den + ry * m[2],
                               m[2] * den))
        if not any(hom_point_in_polygon(probe, cyc) > 0 for cyc in cycles):
            out.add(k + 1)
    return out


def edge_on_outer_face(q: Quad, apex: Point, k: int) -> bool:
    """Can edge k be on the outer face of the quad-plus-apex drawing?"""
    apex = pt(apex[0], apex[1])
    if point_in_polygon(apex, q.polygon(),
                        check_simple=False) is not PointLocation.OUTSIDE:
        raise ValueError("apex must lie strictly outside the quad")
    if not sees_all_vertices(apex, q):
        raise ValueError("apex must see all four corners")
    q.edge(k)  # validates k
    ic, scale = _hom_corners(q)
    ah = hom_from_fraction_scaled(apex, scale)
    return k in _hom_outer_face_edges(ic, ah)


def hom_from_fraction_scaled(p: Point, scale: int) -> Hom:
    x, y = Fraction(p[0]) * scale, Fraction(p[1]) * scale
    w = x.denominator * y.denominator
    return hom_normalize((x.numerator * y.denominator,
                          y.numerator * x.denominator, w))


def good_edges(q: Quad) -> dict[int, Point]:
    """Edges that can lie on the outer face for some exterior apex seeing
    all corners; one witness apex per good edge.

    Decided by evaluating the full predicate at one representative of
    every open cell of the arrangement of the six corner-pair lines.
    """
    ic, scale = _hom_corners(q)
    lines = []
    for i in range(4):
        for j in range(i + 1, 4):
            lines.append(line_through_hom(ic[i], ic[j]))
    lines = list(dict.fromkeys(lines))
    result: dict[int, Hom] = {}
    seen_cells = set()
    for rep in arrangement_cell_representatives_hom(lines):
        sig = tuple(_sign(line_eval_hom(l, rep)) for l in lines)
        if sig in seen_cells:
            continue
        seen_cells.add(sig)
        if hom_point_in_polygon(rep, ic) >= 0:
            continue
        if not _hom_sees(rep, ic):
            continue
        for k in _hom_outer_face_edges(ic, rep):
            result.setdefault(k, rep)
    out: dict[int, Point] = {}
    for k in sorted(result):
        w = point_from_hom(result[k])
        out[k] = Point(w.x / scale, w.y / scale)
    return out


# ---------------------------------------------------------------------------
# pairs of quads: nesting and the precedes relation


def _boundaries_disjoint(qa: Quad, qb: Quad) -> bool:
    for i in range(4):
        for j in range(4):
            rel = segment_relation((qa.corners[i], qa.corners[(i + 1) % 4]),
                                   (qb.corners[j], qb.corners[(j + 1) % 4]))
            if rel.kind is not SegmentKind.DISJOINT:
                return False
    return True


def non_nested(qa: Quad, qb: Quad) -> bool:
    """True iff neither quad has a corner inside the other."""
    if not _boundaries_disjoint(qa, qb):
        raise ValueError("quad boundaries intersect")
    pa, pb = qa.polygon(), qb.polygon()
    for c in qa.corners:
        if point_in_polygon(c, pb, check_simple=False) is PointLocation.INSIDE:
            return False
    for c in qb.corners:
        if point_in_polygon(c, pa, check_simple=False) is PointLocation.INSIDE:
            return False
    return True


def precedes(d1: Quad, d2: Quad) -> bool:
    """The 'smaller' relation between two disjoint quadrilateral drawings.

    Either d1 lies in the closed convex hull of d2, or the convex hull of
    all eight corners has exactly two non-parallel bridge edges whose
    supporting lines meet strictly closer to d1 than to d2.
    """
    if not _boundaries_disjoint(d1, d2):
        raise ValueError("quad boundaries intersect")
    hull2 = convex_hull(d2.corners)
    if all(point_in_polygon(c, hull2, check_simple=False)
           is not PointLocation.OUTSIDE for c in d1.corners):
        return True
    hull8 = convex_hull(list(d1.corners) + list(d2.corners))
    set1 = set(d1.corners)
    bridges = []
    n = len(hull8)
    for i in range(n):
        a, b = hull8[i], hull8[(i + 1) % n]
        if (a in set1) != (b in set1):
            bridges.append((a, b))
    if len(bridges) != 2:
        return False
    l1 = line_through(*bridges[0])
    l2 = line_through(*bridges[1])
    h = intersect_lines_hom(l1, l2)
    if h is None:
        return False  # parallel bridges
    x = point_from_hom(h)
    return (dist2_point_polygon(x, d1.polygon(), check_simple=False)
            < dist2_point_polygon(x, d2.polygon(), check_simple=False))

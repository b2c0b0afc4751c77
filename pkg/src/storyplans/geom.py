"""Exact rational plane geometry.

Points are pairs of ``fractions.Fraction``; lines are primitive integer
triples (a, b, c) representing a*x + b*y + c = 0.  Every predicate is
decided exactly -- no floating point appears anywhere on a decision path.

Hot paths (cell enumeration, quad predicates) run on homogeneous integer
triples (X, Y, W) with W > 0, so that all comparisons reduce to integer
sign tests.  The public API converts to and from Fractions at the edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import ParseError

# orientation constants (sign of the cross product)
CCW = 1
COLLINEAR = 0
CW = -1


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def pt(x, y) -> Point:
    """Build a Point from anything Fraction() accepts."""
    return Point(Fraction(x), Fraction(y))


def parse_rational(token: str) -> Fraction:
    """Parse 'p/q' or 'p'.  Non-canonical inputs are normalized."""
    if not isinstance(token, str):
        raise ParseError(f"rational token must be a string, got {token!r}")
    try:
        value = Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {token!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    """Canonical lowest-terms token: 'p/q' or 'p'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# homogeneous integer triples: (X, Y, W), W > 0, representing (X/W, Y/W)

Hom = tuple


def hom_from_point(p: Point) -> Hom:
    x, y = Fraction(p[0]), Fraction(p[1])
    w = x.denominator * y.denominator
    return (x.numerator * y.denominator, y.numerator * x.denominator, w)


def point_from_hom(h: Hom) -> Point:
    x, y, w = h
    return Point(Fraction(x, w), Fraction(y, w))


def hom_normalize(h: Hom) -> Hom:
    x, y, w = h
    if w < 0:
        x, y, w = -x, -y, -w
    g = math.gcd(math.gcd(abs(x), abs(y)), w)
    if g > 1:
        x, y, w = x // g, y // g, w // g
    return (x, y, w)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def hom_orient(a: Hom, b: Hom, c: Hom) -> int:
    """Orientation of three homogeneous points (all W > 0)."""
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    det = (ax * (by * cw - bw * cy)
           - ay * (bx * cw - bw * cx)
           + aw * (bx * cy - by * cx))
    return _sign(det)


def hom_eq(a: Hom, b: Hom) -> bool:
    ax, ay, aw = a
    bx, by, bw = b
    return ax * bw == bx * aw and ay * bw == by * aw


def hom_cmp_x(a: Hom, b: Hom) -> int:
    return _sign(a[0] * b[2] - b[0] * a[2])


def hom_cmp_y(a: Hom, b: Hom) -> int:
    return _sign(a[1] * b[2] - b[1] * a[2])


def hom_on_segment(p: Hom, a: Hom, b: Hom, closed: bool = True) -> bool:
    """Is p on the segment a-b (collinearity plus betweenness)?"""
    if hom_orient(p, a, b) != 0:
        return False
    cx = hom_cmp_x(a, b)
    if cx != 0:
        lo = _sign(p[0] * a[2] - a[0] * p[2])   # p vs a in x
        hi = _sign(p[0] * b[2] - b[0] * p[2])   # p vs b in x
    else:
        lo = _sign(p[1] * a[2] - a[1] * p[2])
        hi = _sign(p[1] * b[2] - b[1] * p[2])
    if lo == 0 or hi == 0:
        return closed
    return lo != hi


# ---------------------------------------------------------------------------
# lines and half-planes


class Line(NamedTuple):
    a: int
    b: int
    c: int


def _canonical_line(a: int, b: int, c: int) -> Line:
    if a == 0 and b == 0:
        raise ValueError("degenerate line: (a, b) == (0, 0)")
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    if g > 1:
        a, b, c = a // g, b // g, c // g
    lead = a if a != 0 else b
    if lead < 0:
        a, b, c = -a, -b, -c
    return Line(a, b, c)


def line_through(p: Point, q: Point) -> Line:
    """Canonical primitive-integer line through two distinct points."""
    hp, hq = hom_from_point(p), hom_from_point(q)
    return line_through_hom(hp, hq)


def line_through_hom(hp: Hom, hq: Hom) -> Line:
    x1, y1, w1 = hp
    x2, y2, w2 = hq
    a = y1 * w2 - y2 * w1
    b = x2 * w1 - x1 * w2
    c = x1 * y2 - x2 * y1
    if a == 0 and b == 0:
        raise ValueError("line through coincident points")
    return _canonical_line(a, b, c)


def line_eval(line: Line, p: Point) -> Fraction:
    return line.a * p[0] + line.b * p[1] + line.c


def line_eval_hom(line: Line, h: Hom) -> int:
    """Sign-faithful evaluation: a*X + b*Y + c*W (W > 0)."""
    return line.a * h[0] + line.b * h[1] + line.c * h[2]


def intersect_lines_hom(l1: Line, l2: Line) -> Optional[Hom]:
    """Homogeneous intersection point, or None for parallel lines."""
    w = l1.a * l2.b - l2.a * l1.b
    if w == 0:
        return None
    x = l1.b * l2.c - l2.b * l1.c
    y = l2.a * l1.c - l1.a * l2.c
    if w < 0:
        x, y, w = -x, -y, -w
    return (x, y, w)


class HalfPlane(NamedTuple):
    """Open half-plane: points p with sign(a*x + b*y + c) == side."""
    line: Line
    side: int  # +1 or -1

    def contains(self, p: Point) -> bool:
        return _sign_fraction(line_eval(self.line, p)) == self.side


def _sign_fraction(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def halfplane(a, b, c, side: int) -> HalfPlane:
    """Convenience constructor with canonicalization.

    The side refers to the sign of a*x + b*y + c BEFORE canonicalization,
    so halfplane(0, 1, 0, +1) is always {y > 0}.
    """
    line = _canonical_line(int(a), int(b), int(c))
    # canonicalization may flip all signs; track it
    flipped = (line.a, line.b, line.c) != (a, b, c) and (
        line.a == -a and line.b == -b and line.c == -c)
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    return HalfPlane(line, -side if flipped else side)


# ---------------------------------------------------------------------------
# basic predicates


def _hom_fast(p) -> Hom:
    # works for Fraction and int coordinates alike
    x, y = p
    xn, xd = x.numerator, x.denominator
    yn, yd = y.numerator, y.denominator
    return (xn * yd, yn * xd, xd * yd)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p): CCW / COLLINEAR / CW.

    Evaluated in homogeneous integer arithmetic; exact for all rationals.
    """
    ax, ay, aw = _hom_fast(p)
    bx, by, bw = _hom_fast(q)
    cx, cy, cw = _hom_fast(r)
    det = (ax * (by * cw - bw * cy)
           - ay * (bx * cw - bw * cx)
           + aw * (bx * cy - by * cx))
    return (det > 0) - (det < 0)


class SegmentKind(Enum):
    DISJOINT = "disjoint"
    SHARED_ENDPOINT_ONLY = "shared-endpoint-only"
    PROPER_CROSSING = "proper-crossing"
    ENDPOINT_ON_INTERIOR = "endpoint-on-interior"
    COLLINEAR_OVERLAP = "collinear-overlap"


@dataclass(frozen=True)
class SegmentRelation:
    kind: SegmentKind
    point: Optional[Point] = None


def _on_segment_frac(p: Point, a: Point, b: Point, closed=True) -> bool:
    if orientation(p, a, b) != COLLINEAR:
        return False
    if a[0] != b[0]:
        lo, hi = sorted((a[0], b[0]))
        v = p[0]
    else:
        lo, hi = sorted((a[1], b[1]))
        v = p[1]
    if closed:
        return lo <= v <= hi
    return lo < v < hi


def segment_relation(s1: Sequence[Point], s2: Sequence[Point]) -> SegmentRelation:
    """Exact classification of how two non-degenerate segments meet."""
    p, q = s1
    r, s = s2
    if p == q or r == s:
        raise ValueError("degenerate segment")

    o1 = orientation(p, q, r)
    o2 = orientation(p, q, s)
    o3 = orientation(r, s, p)
    o4 = orientation(r, s, q)

    if o1 == 0 and o2 == 0:
        # collinear: compare 1-d spans
        if p[0] != q[0]:
            key = 0
        else:
            key = 1
        a1, b1 = sorted((p[key], q[key]))
        a2, b2 = sorted((r[key], s[key]))
        lo, hi = max(a1, a2), min(b1, b2)
        if lo > hi:
            return SegmentRelation(SegmentKind.DISJOINT)
        if lo == hi:
            # touching at exactly one point; it is an endpoint of both
            return SegmentRelation(SegmentKind.SHARED_ENDPOINT_ONLY)
        return SegmentRelation(SegmentKind.COLLINEAR_OVERLAP)

    shared = ({p, q} & {r, s})
    if shared:
        return SegmentRelation(SegmentKind.SHARED_ENDPOINT_ONLY)

    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        l1 = line_through(p, q)
        l2 = line_through(r, s)
        h = intersect_lines_hom(l1, l2)
        assert h is not None
        return SegmentRelation(SegmentKind.PROPER_CROSSING, point_from_hom(h))

    # some endpoint lies on the other segment's relative interior
    for z, a, b in ((r, p, q), (s, p, q), (p, r, s), (q, r, s)):
        if _on_segment_frac(z, a, b, closed=False):
            return SegmentRelation(SegmentKind.ENDPOINT_ON_INTERIOR, z)
    return SegmentRelation(SegmentKind.DISJOINT)


class PointLocation(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def polygon_is_simple(poly: Sequence[Point]) -> bool:
    n = len(poly)
    if n < 3:
        return False
    segs = [(poly[i], poly[(i + 1) % n]) for i in range(n)]
    if any(a == b for a, b in segs):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            rel = segment_relation(segs[i], segs[j]).kind
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                if rel is not SegmentKind.SHARED_ENDPOINT_ONLY:
                    return False
            elif rel is not SegmentKind.DISJOINT:
                return False
    return True


def point_in_polygon(p: Point, poly: Sequence[Point],
                     check_simple: bool = True) -> PointLocation:
    """Exact even-odd classification with boundary detected exactly."""
    if check_simple and not polygon_is_simple(poly):
        raise ValueError("polygon is not simple")
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if _on_segment_frac(p, a, b):
            return PointLocation.BOUNDARY
    py = p[1]
    wn = 0
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if a[1] <= py:
            if b[1] > py and orientation(a, b, p) > 0:
                wn += 1
        elif b[1] <= py and orientation(a, b, p) < 0:
            wn -= 1
    return PointLocation.INSIDE if wn != 0 else PointLocation.OUTSIDE


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Monotone chain; CCW order, collinear non-extreme points excluded."""
    if not points:
        raise ValueError("convex hull of empty set")
    pts = sorted(set(Point(Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) == 1:
        return [pts[0]]
    def chain(seq):
        out: list[Point] = []
        for q in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], q) <= 0:
                out.pop()
            out.append(q)
        return out
    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2 and len(pts) >= 2:
        # all points collinear: keep the two extremes
        hull = [pts[0], pts[-1]]
    return hull


# ---------------------------------------------------------------------------
# line arrangements


def _arrangement_samples_on_line(line: Line, others: Sequence[Line]):
    """Homogeneous sample points, one in the interior of every edge of the
    arrangement lying on `line` (segment midpoints plus a point past each
    extreme intersection)."""
    a, b, _ = line
    cuts = []
    for other in others:
        h = intersect_lines_hom(line, other)
        if h is not None:
            cuts.append(h)
    # sort along the line by the monotone key (b*X - a*Y)/W
    def sort_key_cmp(h1, h2):
        n1 = b * h1[0] - a * h1[1]
        n2 = b * h2[0] - a * h2[1]
        return _sign(n1 * h2[2] - n2 * h1[2])
    uniq: list[Hom] = []
    for h in cuts:
        if not any(hom_eq(h, u) for u in uniq):
            uniq.append(h)
    # insertion sort with the exact comparator (tiny n)
    ordered: list[Hom] = []
    for h in uniq:
        i = 0
        while i < len(ordered) and sort_key_cmp(ordered[i], h) < 0:
            i += 1
        ordered.insert(i, h)

    samples: list[Hom] = []
    if not ordered:
        # any point of the line
        if a != 0:
            base = (-line.c, 0, a)
        else:
            base = (0, -line.c, b)
        if base[2] < 0:
            base = (-base[0], -base[1], -base[2])
        samples.append(base)
    else:
        for h1, h2 in zip(ordered, ordered[1:]):
            x1, y1, w1 = h1
            x2, y2, w2 = h2
            samples.append((x1 * w2 + x2 * w1, y1 * w2 + y2 * w1, 2 * w1 * w2))
        # beyond both extremes, offset by the direction vector (b, -a)
        x, y, w = ordered[0]
        samples.append((x - b * w, y + a * w, w))
        x, y, w = ordered[-1]
        samples.append((x + b * w, y - a * w, w))
    return samples


def arrangement_cell_representatives_hom(lines: Sequence[Line]) -> list[Hom]:
    """One interior point for every open cell of the line arrangement.

    Every cell has a boundary edge on some line; pushing the midpoint of
    every edge slightly off both sides of its line therefore covers all
    cells.  The push distance is chosen exactly so no other line is
    crossed.
    """
    lines = list(dict.fromkeys(_canonical_line(*l) for l in lines))
    reps: list[Hom] = []
    seen = set()
    for idx, line in enumerate(lines):
        others = [l for l in lines if l != line]
        a, b, _ = line
        for s in _arrangement_samples_on_line(line, others):
            sx, sy, sw = s
            # delta < |eval(other, s)| / (w * 2 * (|a'*a + b'*b| + 1)) for all
            num, den = 1, 1  # delta as num/den, start at 1
            for other in others:
                e = abs(line_eval_hom(other, s))
                dot = abs(other.a * a + other.b * b)
                # candidate bound e / (sw * 2 * (dot + 1))
                cn, cd = e, sw * 2 * (dot + 1)
                if cn * den <= num * cd:
                    num, den = cn, cd
            if num == 0:
                continue  # sample on another line (cannot happen for midpoints)
            for sgn in (1, -1):
                h = hom_normalize((sx * den + sgn * a * num * sw,
                                   sy * den + sgn * b * num * sw,
                                   sw * den))
                if h not in seen:
                    seen.add(h)
                    reps.append(h)
    return reps


def arrangement_cell_representatives(lines: Sequence[Line]) -> list[Point]:
    canon = [_canonical_line(*l) for l in lines]
    if len(set(canon)) != len(canon):
        raise ValueError("lines must be pairwise distinct")
    return [point_from_hom(h) for h in arrangement_cell_representatives_hom(canon)]


def halfplanes_feasible(halfplanes: Sequence[HalfPlane]) -> Optional[Point]:
    """A rational point strictly inside all open half-planes, if any.

    A non-empty open intersection contains a full open cell of the
    arrangement of the constraint lines, so checking one representative
    per cell decides feasibility exactly.
    """
    if not halfplanes:
        return Point(Fraction(0), Fraction(0))
    lines = list(dict.fromkeys(h.line for h in halfplanes))
    for rep in arrangement_cell_representatives_hom(lines):
        if all(_sign(line_eval_hom(h.line, rep)) == h.side for h in halfplanes):
            witness = point_from_hom(rep)
            assert all(h.contains(witness) for h in halfplanes)
            return witness
    return None


# ---------------------------------------------------------------------------
# distances


def dist2_point_segment(p: Point, a: Point, b: Point) -> Fraction:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    length2 = dx * dx + dy * dy
    if length2 == 0:
        return (px - ax) ** 2 + (py - ay) ** 2
    t = ((px - ax) * dx + (py - ay) * dy) / length2
    if t <= 0:
        qx, qy = ax, ay
    elif t >= 1:
        qx, qy = bx, by
    else:
        qx, qy = ax + t * dx, ay + t * dy
    return (px - qx) ** 2 + (py - qy) ** 2


def dist2_point_polygon(p: Point, poly: Sequence[Point],
                        check_simple: bool = True) -> Fraction:
    """Squared distance to the closed region bounded by a simple polygon."""
    loc = point_in_polygon(p, poly, check_simple=check_simple)
    if loc is not PointLocation.OUTSIDE:
        return Fraction(0)
    n = len(poly)
    return min(dist2_point_segment(p, poly[i], poly[(i + 1) % n])
               for i in range(n))

"""Property harnesses for the quadrilateral lemmas.

These drive the exhaustive grid suite for the two-good-edges bound, the
randomized suites for the precedes relation, and the constructed
inner-face configurations for the containment implication.  The CLI
`lemmas` subcommand and the acceptance tests both run them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .geom import (Point, PointLocation, SegmentKind, point_in_polygon, pt,
                   segment_relation)
from .quads import (Quad, QuadKind, _boundaries_disjoint, classify_quad,
                    edge_on_outer_face, good_edges, make_quad, precedes,
                    sees_all_vertices)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_seg(p, a, b) -> bool:
    return (_cross(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_meet(p, q, r, s) -> bool:
    o1, o2 = _cross(p, q, r), _cross(p, q, s)
    o3, o4 = _cross(r, s, p), _cross(r, s, q)
    if ((o1 > 0) != (o2 > 0)) and ((o3 > 0) != (o4 > 0)) and 0 not in (o1, o2, o3, o4):
        return True
    for z, a, b in ((r, p, q), (s, p, q), (p, r, s), (q, r, s)):
        if _on_seg(z, a, b):
            return True
    return False


def _is_simple_int_quad(c) -> bool:
    for i in range(4):
        if _cross(c[i - 1], c[i], c[(i + 1) % 4]) == 0:
            return False
    if _segments_meet(c[0], c[1], c[2], c[3]):
        return False
    if _segments_meet(c[1], c[2], c[3], c[0]):
        return False
    return True


_DIHEDRAL = (
    lambda x, y: (x, y), lambda x, y: (-y, x),
    lambda x, y: (-x, -y), lambda x, y: (y, -x),
    lambda x, y: (-x, y), lambda x, y: (x, -y),
    lambda x, y: (y, x), lambda x, y: (-y, -x),
)


def _canonical_key(c) -> tuple:
    best = None
    for f in _DIHEDRAL:
        imgs = [f(x, y) for x, y in c]
        mnx = min(p[0] for p in imgs)
        mny = min(p[1] for p in imgs)
        key = tuple((x - mnx, y - mny) for x, y in imgs)
        if best is None or key < best:
            best = key
    return best


def iter_grid_quads(grid_max: int = 4) -> Iterator[tuple]:
    """Simple labeled quads with corners in {0..grid_max}^2, one per
    congruence class of labeled corner sequences (grid isometries plus
    translations)."""
    pts = [(x, y) for x in range(grid_max + 1) for y in range(grid_max + 1)]
    seen: set = set()
    for c in itertools.permutations(pts, 4):
        if not _is_simple_int_quad(c):
            continue
        key = _canonical_key(c)
        if key in seen:
            continue
        seen.add(key)
        yield c


@dataclass
class SuiteResult:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < 50:
            self.failures.append(message)


def run_good_edges_suite(grid_max: int = 4,
                         verify_witnesses: bool = True,
                         progress: Optional[Callable[[int], None]] = None
                         ) -> SuiteResult:
    """Exhaustive two-good-edges suite over the grid quads.

    Checks |good| <= 2; edges incident to a reflex corner are never good;
    opposite edges of a convex quad are never both good; every reported
    witness passes the public visibility and outer-face predicates.
    """
    res = SuiteResult()
    for c in iter_grid_quads(grid_max):
        q = _quad_from_int_corners(c)
        ge = good_edges(q)
        res.checked += 1
        if progress and res.checked % 2000 == 0:
            progress(res.checked)
        if len(ge) > 2:
            res.fail(f"{c}: {sorted(ge)} has more than two good edges")
        cls = classify_quad(q)
        if cls.kind is QuadKind.CONCAVE:
            rc = cls.reflex_corner
            incident = {(rc - 2) % 4 + 1, rc}
            bad = incident & set(ge)
            if bad:
                res.fail(f"{c}: reflex-incident edges {sorted(bad)} reported good")
        else:
            if 1 in ge and 3 in ge:
                res.fail(f"{c}: opposite edges 1 and 3 both good")
            if 2 in ge and 4 in ge:
                res.fail(f"{c}: opposite edges 2 and 4 both good")
        if verify_witnesses:
            for k, w in ge.items():
                if (point_in_polygon(w, q.polygon(), check_simple=False)
                        is not PointLocation.OUTSIDE
                        or not sees_all_vertices(w, q)
                        or not edge_on_outer_face(q, w, k)):
                    res.fail(f"{c}: witness {w} for edge {k} does not verify")
    return res


# ---------------------------------------------------------------------------
# random quads and the precedes suites


def _quad_from_int_corners(c) -> Quad:
    """Trusted constructor for corners already validated with integers."""
    area2 = sum(c[i][0] * c[(i + 1) % 4][1] - c[(i + 1) % 4][0] * c[i][1]
                for i in range(4))
    if area2 < 0:
        c = (c[0], c[3], c[2], c[1])
    return Quad(tuple(pt(x, y) for x, y in c))


def random_quad(rng: random.Random, span: int = 8) -> Quad:
    while True:
        seen = set()
        while len(seen) < 4:
            seen.add((rng.randint(-span, span), rng.randint(-span, span)))
        p = list(seen)
        for order in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
            c = [p[i] for i in order]
            if _is_simple_int_quad(c):
                return _quad_from_int_corners(c)


def run_no_mutual_suite(samples: int = 10000, seed: int = 20240801,
                        span: int = 8) -> SuiteResult:
    """No pair of disjoint quads satisfies precedes both ways."""
    rng = random.Random(seed)
    res = SuiteResult()
    while res.checked < samples:
        qa, qb = random_quad(rng, span), random_quad(rng, span)
        if not _boundaries_disjoint(qa, qb):
            continue
        res.checked += 1
        if precedes(qa, qb) and precedes(qb, qa):
            res.fail(f"mutual precedes: {qa.corners} / {qb.corners}")
    return res


def _shrunk_square_inside(center: Point, poly, avoid: Quad) -> Optional[Quad]:
    """A tiny axis-aligned square around `center` strictly inside `poly`
    and boundary-disjoint from `avoid`, or None."""
    half = Fraction(1, 4)
    for _ in range(64):
        cs = [pt(center[0] - half, center[1] - half),
              pt(center[0] + half, center[1] - half),
              pt(center[0] + half, center[1] + half),
              pt(center[0] - half, center[1] + half)]
        inside = all(point_in_polygon(c, poly, check_simple=False)
                     is PointLocation.INSIDE for c in cs)
        if inside:
            n = len(poly)
            sq_edges = [(cs[i], cs[(i + 1) % 4]) for i in range(4)]
            clean = True
            for i in range(n):
                pe = (poly[i], poly[(i + 1) % n])
                if any(segment_relation(se, pe).kind is not SegmentKind.DISJOINT
                       for se in sq_edges):
                    clean = False
                    break
            if clean:
                q = make_quad([(c[0], c[1]) for c in cs])
                if _boundaries_disjoint(q, avoid):
                    return q
        half /= 2
    return None


def run_containment_suite(samples: int = 2000, seed: int = 20240802,
                          span: int = 8) -> SuiteResult:
    """Quads shrunk into the convex hull of another always precede it."""
    from .geom import convex_hull
    rng = random.Random(seed)
    res = SuiteResult()
    while res.checked < samples:
        d2 = random_quad(rng, span)
        hull = convex_hull(d2.corners)
        cx = sum((c[0] for c in hull), Fraction(0)) / len(hull)
        cy = sum((c[1] for c in hull), Fraction(0)) / len(hull)
        center = pt(cx, cy)
        d1 = _shrunk_square_inside(center, hull, d2)
        if d1 is None:
            continue
        res.checked += 1
        if not precedes(d1, d2):
            res.fail(f"containment pair fails case 1: {d1.corners} in {d2.corners}")
    return res


def run_mirror_suite(samples: int = 2000, seed: int = 20240803,
                     span: int = 8) -> SuiteResult:
    """Mirror-symmetric congruent pairs never relate in either direction."""
    rng = random.Random(seed)
    res = SuiteResult()
    axis = 4 * span  # reflect across x = axis/... far enough to be disjoint
    while res.checked < samples:
        qa = random_quad(rng, span)
        mirrored = [(2 * axis - int(c[0]), int(c[1])) for c in qa.corners]
        qb = _quad_from_int_corners(mirrored)
        res.checked += 1
        if precedes(qa, qb) or precedes(qb, qa):
            res.fail(f"mirror pair relates: {qa.corners}")
    return res


def _apex_for(q: Quad, rng: random.Random, span: int) -> Optional[Point]:
    for _ in range(200):
        p = pt(rng.randint(-4 * span, 4 * span), rng.randint(-4 * span, 4 * span))
        if point_in_polygon(p, q.polygon(), check_simple=False) is not PointLocation.OUTSIDE:
            continue
        if sees_all_vertices(p, q):
            return p
    return None


def inner_faces(q: Quad, apex: Point) -> list[list[Point]]:
    """Bounded faces of the quad-plus-apex drawing: the quad interior and
    every apex triangle containing no other corner."""
    faces = [q.polygon()]
    for k in range(4):
        tri = [apex, q.corners[k], q.corners[(k + 1) % 4]]
        others = [q.corners[(k + 2) % 4], q.corners[(k + 3) % 4]]
        if all(point_in_polygon(o, tri, check_simple=False)
               is PointLocation.OUTSIDE for o in others):
            faces.append(tri)
    return faces


def run_inner_face_suite(samples: int = 1000, seed: int = 20240804,
                     span: int = 8) -> SuiteResult:
    """A quad drawn strictly inside an inner face of (other quad + apex)
    precedes the other quad."""
    rng = random.Random(seed)
    res = SuiteResult()
    while res.checked < samples:
        d2 = random_quad(rng, span)
        apex = _apex_for(d2, rng, span)
        if apex is None:
            continue
        for face in inner_faces(d2, apex):
            if res.checked >= samples:
                break
            if len(face) == 3:
                cx = sum((c[0] for c in face), Fraction(0)) / 3
                cy = sum((c[1] for c in face), Fraction(0)) / 3
                center = pt(cx, cy)
            else:
                center = _interior_point(face, rng)
                if center is None:
                    continue
            d1 = _shrunk_square_inside(center, face, d2)
            if d1 is None:
                continue
            res.checked += 1
            if not precedes(d1, d2):
                res.fail(f"inner-face config fails: {d1.corners} inside face of "
                         f"{d2.corners} + {apex}")
    return res


def _interior_point(poly, rng: random.Random, tries: int = 100) -> Optional[Point]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    for _ in range(tries):
        x = min(xs) + (max(xs) - min(xs)) * Fraction(rng.randint(1, 127), 128)
        y = min(ys) + (max(ys) - min(ys)) * Fraction(rng.randint(1, 127), 128)
        p = pt(x, y)
        if point_in_polygon(p, poly, check_simple=False) is PointLocation.INSIDE:
            return p
    return None


def run_witness_search(q: Quad, samples: int = 10000,
                       seed: int = 20240805) -> SuiteResult:
    """Randomized search for a witness of a non-reported edge (must fail)."""
    rng = random.Random(seed)
    reported = set(good_edges(q))
    xs = [c[0] for c in q.corners]
    ys = [c[1] for c in q.corners]
    w = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    res = SuiteResult()
    for _ in range(samples):
        scale = rng.choice((1, 2, 8, 32))
        x = min(xs) + w * scale * Fraction(rng.randint(-128, 256), 128)
        y = min(ys) + w * scale * Fraction(rng.randint(-128, 256), 128)
        p = pt(x, y)
        if point_in_polygon(p, q.polygon(), check_simple=False) is not PointLocation.OUTSIDE:
            continue
        if not sees_all_vertices(p, q):
            continue
        res.checked += 1
        for k in (1, 2, 3, 4):
            if k not in reported and edge_on_outer_face(q, p, k):
                res.fail(f"edge {k} of {q.corners} has unreported witness {p}")
    return res

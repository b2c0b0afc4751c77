"""Storyplan model: schedules, drawings, the frame validator, file IO, SVG.

A storyplan pairs a schedule (one visible interval per vertex over frames
1..num_frames) with a single global drawing (one position per vertex, one
bend sequence per edge).  Frame t shows the subgraph induced by the
vertices whose interval contains t; consistency across consecutive frames
is structural because the drawing is global.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Mapping, NamedTuple, Optional, Sequence

from .errors import CoverageError, ParseError
from .geom import (Point, SegmentKind, format_rational, parse_rational,
                   segment_relation, _on_segment_frac)
from .graph_core import Graph, build_graph, edge_key, induced_subgraph


class Interval(NamedTuple):
    s: int
    e: int


@dataclass(frozen=True)
class Schedule:
    num_frames: int
    visible: Mapping[str, Interval]

    def visible_at(self, t: int) -> set[str]:
        return {v for v, iv in self.visible.items() if iv.s <= t <= iv.e}


@dataclass(frozen=True)
class Drawing:
    pos: Mapping[str, Point]
    bends: Mapping[tuple[str, str], tuple[Point, ...]]  # keyed (min,max) label

    def polyline(self, u: str, v: str) -> list[Point]:
        """Drawn points from u to v, bends included."""
        key = edge_key(u, v)
        mids = list(self.bends.get(key, ()))
        if (u, v) != key:
            mids.reverse()
        return [self.pos[u]] + mids + [self.pos[v]]


@dataclass(frozen=True)
class Storyplan:
    schedule: Schedule
    drawing: Drawing


class Mode(Enum):
    GEOMETRIC = "geometric"
    TOPOLOGICAL_PL = "topological"


class ViolationCode(Enum):
    MALFORMED_INTERVAL = "MalformedInterval"
    EDGE_NEVER_VISIBLE = "EdgeNeverVisible"
    DUPLICATE_POSITION = "DuplicatePosition"
    VERTEX_ON_EDGE = "VertexOnEdge"
    EDGE_CROSSING = "EdgeCrossing"
    SELF_INTERSECTING_POLYLINE = "SelfIntersectingPolyline"
    BENDS_IN_GEOMETRIC_MODE = "BendsInGeometricMode"
    COVERAGE_MISMATCH = "CoverageMismatch"


class Violation(NamedTuple):
    code: ViolationCode
    frame: Optional[int]
    elements: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> set[ViolationCode]:
        return {v.code for v in self.violations}

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


def _check_coverage(g: Graph, plan_vertices: set, what: str) -> None:
    if plan_vertices != set(g.vertices):
        missing = sorted(set(g.vertices) - plan_vertices)
        extra = sorted(plan_vertices - set(g.vertices))
        raise CoverageError(
            f"{what} does not cover the graph (missing={missing}, extra={extra})")


def validate_schedule(g: Graph, sch: Schedule) -> ValidationReport:
    """Interval sanity plus the co-occurrence requirement for every edge."""
    _check_coverage(g, set(sch.visible), "schedule")
    out: list[Violation] = []
    ell = sch.num_frames
    for v in g.vertices:
        iv = sch.visible[v]
        if not (1 <= iv.s <= iv.e <= ell):
            out.append(Violation(
                ViolationCode.MALFORMED_INTERVAL, None, (v,),
                f"interval of {v} is [{iv.s},{iv.e}], not within [1,{ell}]"))
    for u, v in g.edges:
        iu, iv = sch.visible[u], sch.visible[v]
        if max(iu.s, iv.s) > min(iu.e, iv.e):
            out.append(Violation(
                ViolationCode.EDGE_NEVER_VISIBLE, None, (u, v),
                f"edge {u}-{v} never visible: [{iu.s},{iu.e}] vs [{iv.s},{iv.e}]"))
    return ValidationReport(tuple(out))


def frame_graph(g: Graph, sch: Schedule, t: int) -> Graph:
    if not 1 <= t <= sch.num_frames:
        raise ValueError(f"time step {t} out of range [1,{sch.num_frames}]")
    return induced_subgraph(g, sch.visible_at(t) & g.vertex_set)


def _polyline_segments(points: Sequence[Point]):
    return [(points[i], points[i + 1]) for i in range(len(points) - 1)]


def _bbox(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _bboxes_meet(b1, b2) -> bool:
    return not (b1[2] < b2[0] or b2[2] < b1[0]
                or b1[3] < b2[1] or b2[3] < b1[1])


def validate_frame(g: Graph, plan: Storyplan, t: int, mode: Mode) -> ValidationReport:
    """Exact planarity checks for the drawing of the frame at t."""
    sch = plan.schedule
    if not 1 <= t <= sch.num_frames:
        raise ValueError(f"time step {t} out of range [1,{sch.num_frames}]")
    drawing = plan.drawing
    visible = sorted(sch.visible_at(t) & g.vertex_set)
    edges = [e for e in g.edges if e[0] in visible and e[1] in visible]
    out: list[Violation] = []

    # (a) pairwise distinct positions
    by_pos: dict[Point, str] = {}
    for v in visible:
        p = drawing.pos[v]
        if p in by_pos:
            out.append(Violation(
                ViolationCode.DUPLICATE_POSITION, t, (by_pos[p], v),
                f"frame {t}: {by_pos[p]} and {v} share position"))
        else:
            by_pos[p] = v

    polylines = {e: drawing.polyline(*e) for e in edges}

    # (e) geometric mode forbids bends
    if mode is Mode.GEOMETRIC:
        for e in edges:
            if drawing.bends.get(e):
                out.append(Violation(
                    ViolationCode.BENDS_IN_GEOMETRIC_MODE, t, e,
                    f"frame {t}: edge {e[0]}-{e[1]} has bends in geometric mode"))

    # (d) self-intersection within one polyline
    for e, pts in polylines.items():
        segs = _polyline_segments(pts)
        degenerate = any(a == b for a, b in segs)
        if degenerate:
            out.append(Violation(
                ViolationCode.SELF_INTERSECTING_POLYLINE, t, e,
                f"frame {t}: edge {e[0]}-{e[1]} has a degenerate segment"))
            continue
        bad = False
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                rel = segment_relation(segs[i], segs[j]).kind
                if j == i + 1:
                    if rel is not SegmentKind.SHARED_ENDPOINT_ONLY:
                        bad = True
                elif rel is not SegmentKind.DISJOINT:
                    bad = True
        if bad:
            out.append(Violation(
                ViolationCode.SELF_INTERSECTING_POLYLINE, t, e,
                f"frame {t}: edge {e[0]}-{e[1]} polyline self-intersects"))

    # (b) no visible vertex on the relative interior of a polyline
    for e, pts in polylines.items():
        segs = _polyline_segments(pts)
        if any(a == b for a, b in segs):
            continue
        first, last = pts[0], pts[-1]
        for w in visible:
            p = drawing.pos[w]
            for k, (a, b) in enumerate(segs):
                if not _on_segment_frac(p, a, b):
                    continue
                if k == 0 and p == first:
                    continue
                if k == len(segs) - 1 and p == last:
                    continue
                out.append(Violation(
                    ViolationCode.VERTEX_ON_EDGE, t, (w, e[0], e[1]),
                    f"frame {t}: vertex {w} lies on edge {e[0]}-{e[1]}"))
                break

    # (c) polylines of distinct edges meet only at a shared graph endpoint
    boxes = {e: _bbox(pts) for e, pts in polylines.items()}
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            e1, e2 = edges[i], edges[j]
            if not _bboxes_meet(boxes[e1], boxes[e2]):
                continue
            shared = set(e1) & set(e2)
            shared_pos = drawing.pos[next(iter(shared))] if shared else None
            segs1 = _polyline_segments(polylines[e1])
            segs2 = _polyline_segments(polylines[e2])
            if any(a == b for a, b in segs1 + segs2):
                continue
            crossing = False
            for s1 in segs1:
                for s2 in segs2:
                    rel = segment_relation(s1, s2)
                    if rel.kind is SegmentKind.DISJOINT:
                        continue
                    if (rel.kind is SegmentKind.SHARED_ENDPOINT_ONLY
                            and shared_pos is not None
                            and shared_pos in set(s1) & set(s2)):
                        continue
                    crossing = True
            if crossing:
                out.append(Violation(
                    ViolationCode.EDGE_CROSSING, t, (e1, e2),
                    f"frame {t}: edges {e1[0]}-{e1[1]} and {e2[0]}-{e2[1]} intersect"))

    return ValidationReport(tuple(out))


def validate_storyplan(g: Graph, plan: Storyplan, mode: Mode) -> ValidationReport:
    """Schedule checks plus frame checks for every time step."""
    _check_coverage(g, set(plan.schedule.visible), "schedule")
    _check_coverage(g, set(plan.drawing.pos), "drawing")
    missing_edges = set(g.edges) - set(plan.drawing.bends)
    if missing_edges:
        raise CoverageError(f"drawing lacks bend entries for {sorted(missing_edges)}")
    report = validate_schedule(g, plan.schedule)
    for t in range(1, plan.schedule.num_frames + 1):
        report = report.merged(validate_frame(g, plan, t, mode))
    return report


# ---------------------------------------------------------------------------
# file format


def write_storyplan(g: Graph, plan: Storyplan) -> str:
    def fmt_pt(p: Point):
        return [format_rational(p.x), format_rational(p.y)]
    vertices = []
    for v in sorted(g.vertices):
        iv = plan.schedule.visible[v]
        vertices.append({"id": v, "interval": [iv.s, iv.e],
                         "pos": fmt_pt(plan.drawing.pos[v])})
    edges = []
    for u, v in sorted(g.edges):
        bends = [fmt_pt(p) for p in plan.drawing.bends.get((u, v), ())]
        edges.append({"u": u, "v": v, "bends": bends})
    doc = {"num_frames": plan.schedule.num_frames,
           "vertices": vertices, "edges": edges}
    return json.dumps(doc, indent=2) + "\n"


def read_storyplan(text: str) -> tuple[Graph, Storyplan]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("storyplan document must be a JSON object")
    try:
        num_frames = int(doc["num_frames"])
        raw_vertices = doc["vertices"]
        raw_edges = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed storyplan document: {exc}") from exc

    def parse_pt(raw) -> Point:
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise ParseError(f"malformed point {raw!r}")
        return Point(parse_rational(raw[0]), parse_rational(raw[1]))

    labels: list[str] = []
    intervals: dict[str, Interval] = {}
    pos: dict[str, Point] = {}
    for item in raw_vertices:
        try:
            vid = item["id"]
            s, e = int(item["interval"][0]), int(item["interval"][1])
            p = parse_pt(item["pos"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed vertex entry: {exc}") from exc
        if vid in intervals:
            raise ParseError(f"duplicate vertex {vid!r}")
        labels.append(vid)
        intervals[vid] = Interval(s, e)
        pos[vid] = p

    pairs: list[tuple[str, str]] = []
    bends: dict[tuple[str, str], tuple[Point, ...]] = {}
    for item in raw_edges:
        try:
            u, v = item["u"], item["v"]
            raw_bends = item.get("bends", [])
            mids = tuple(parse_pt(b) for b in raw_bends)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed edge entry: {exc}") from exc
        if u not in intervals or v not in intervals:
            missing = u if u not in intervals else v
            raise ParseError(f"edge references unknown vertex {missing!r}")
        if u == v:
            raise ParseError(f"loop at {u!r}")
        key = edge_key(u, v)
        if (u, v) != key:
            mids = tuple(reversed(mids))
        pairs.append(key)
        bends[key] = mids

    g = build_graph(labels, pairs)
    bends = {e: bends.get(e, ()) for e in g.edges}
    plan = Storyplan(Schedule(num_frames, intervals), Drawing(pos, bends))
    return g, plan


# ---------------------------------------------------------------------------
# SVG export


def _svg_num(v: Fraction) -> str:
    return f"{float(v):.4f}"


def render_frames_svg(g: Graph, plan: Storyplan, outdir) -> list[str]:
    """One SVG per frame on a shared viewport; deterministic bytes."""
    sch_report = validate_schedule(g, plan.schedule)
    if not sch_report.valid:
        raise ValueError("schedule is invalid; refusing to render")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    points = [plan.drawing.pos[v] for v in g.vertices]
    for mids in plan.drawing.bends.values():
        points.extend(mids)
    xs = [p.x for p in points] or [Fraction(0)]
    ys = [p.y for p in points] or [Fraction(0)]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    width = maxx - minx
    height = maxy - miny
    pad = max(width, height) * Fraction(5, 100)
    if pad == 0:
        pad = Fraction(1)
    minx, maxx = minx - pad, maxx + pad
    miny, maxy = miny - pad, maxy + pad
    width, height = maxx - minx, maxy - miny
    radius = max(width, height) / 150
    font = radius * 2

    def sx(x: Fraction) -> str:
        return _svg_num(x - minx)

    def sy(y: Fraction) -> str:
        return _svg_num(maxy - y)  # flip: SVG y grows downward

    files: list[str] = []
    for t in range(1, plan.schedule.num_frames + 1):
        visible = sorted(plan.schedule.visible_at(t) & g.vertex_set)
        vset = set(visible)
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="0 0 {_svg_num(width)} {_svg_num(height)}">',
            f'<rect x="0" y="0" width="{_svg_num(width)}" '
            f'height="{_svg_num(height)}" fill="white"/>',
        ]
        for u, v in g.edges:
            if u in vset and v in vset:
                pts = plan.drawing.polyline(u, v)
                coords = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in pts)
                lines.append(f'<polyline points="{coords}" fill="none" '
                             f'stroke="black" stroke-width="{_svg_num(radius / 3)}"/>')
        for v in visible:
            p = plan.drawing.pos[v]
            lines.append(f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" '
                         f'r="{_svg_num(radius)}" fill="steelblue"/>')
            lines.append(f'<text x="{sx(p.x + radius)}" y="{sy(p.y + radius)}" '
                         f'font-size="{_svg_num(font)}">{v}</text>')
        lines.append("</svg>")
        name = f"frame_{t:03d}.svg"
        (outdir / name).write_text("\n".join(lines) + "\n")
        files.append(name)
    return files

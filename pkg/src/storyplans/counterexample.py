"""The 28-vertex counterexample graph and its eight-frame PL storyplan.

The graph: three four-cycles A, B, C; eight apex vertices q_i^j adjacent
to all twelve cycle vertices; eight edge vertices r_i^j adjacent to q_i^j
and to the endpoints of the i-th edge of each cycle.

The storyplan keeps the cycles visible in all eight frames and shows the
apex pair P_i^j = {q_i^j, r_i^j} exactly in frame (j-1)*4 + i.  The three
cycles are drawn as axis-aligned squares on a diagonal, which is symmetric
under both the diagonal reflection (x,y) -> (y,x) and the 180-degree
rotation about the layout center; frame 3 is laid out by hand and frames
1, 2, 4 are its images under those symmetries (frames k and k+4 reuse the
same drawing for the second apex pair).
"""

from __future__ import annotations

from typing import Callable

from .geom import Point, pt
from .graph_core import Graph, build_graph, edge_key
from .storyplan import Drawing, Interval, Schedule, Storyplan

CYCLE_LABELS = tuple(f"{c}{i}" for c in "abc" for i in range(1, 5))
APEX_LABELS = tuple(f"q_{i}^{j}" for j in (1, 2) for i in range(1, 5))
EDGE_VERTEX_LABELS = tuple(f"r_{i}^{j}" for j in (1, 2) for i in range(1, 5))
COUNTEREXAMPLE_LABELS = CYCLE_LABELS + APEX_LABELS + EDGE_VERTEX_LABELS


def build_counterexample() -> Graph:
    """The graph G: |V| = 28, |E| = 164."""
    edges: list[tuple[str, str]] = []
    for c in "abc":
        for i in range(1, 5):
            edges.append((f"{c}{i}", f"{c}{i % 4 + 1}"))
    cycle = list(CYCLE_LABELS)
    tags = {}
    for c in "abc":
        for i in range(1, 5):
            tags[f"{c}{i}"] = f"cycle:{c.upper()}"
    for j in (1, 2):
        for i in range(1, 5):
            q, r = f"q_{i}^{j}", f"r_{i}^{j}"
            tags[q] = f"apex:{i}:{j}"
            tags[r] = f"edge-vertex:{i}:{j}"
            edges.append((r, q))
            for v in cycle:
                edges.append((q, v))
            for c in "abc":
                edges.append((r, f"{c}{i}"))
                edges.append((r, f"{c}{i % 4 + 1}"))
    labels = list(COUNTEREXAMPLE_LABELS)
    return build_graph(labels, edges, tags)


# ---------------------------------------------------------------------------
# drawing (coordinates are 4x the design grid so everything is integral)

_SQ = 16          # square side
_OFF = {"a": 0, "b": 40, "c": 80}
_CENTER = 96      # point-reflection constant: (x,y) -> (96-x, 96-y)


def _corner(c: str, k: int) -> tuple[int, int]:
    o = _OFF[c]
    return {1: (o, o), 2: (o + _SQ, o), 3: (o + _SQ, o + _SQ), 4: (o, o + _SQ)}[k]


# frame 3 (top edges exposed): apex below-right, edge vertex above-left
_F3_Q = (176, -80)
_F3_R = (-80, 176)

# bend sequences from the apex to each cycle vertex
_F3_Q_BENDS = {
    ("a", 1): [], ("a", 2): [],
    ("a", 3): [(22, -2), (22, 22)],
    ("a", 4): [(-6, -4), (-6, 22)],
    ("b", 1): [], ("b", 2): [],
    ("b", 3): [(62, 36), (62, 62)],
    ("b", 4): [(34, -6), (34, 61)],
    ("c", 1): [], ("c", 2): [],
    ("c", 3): [(102, 72), (102, 102)],
    ("c", 4): [(74, 28), (74, 98)],
}
# bend sequence from the edge vertex to the apex
_F3_RQ_BENDS = [(-88, -88)]
# the edge vertex reaches the far pair (corners 3 and 4) straight


def _ident(p):
    return p


def _diag(p):
    return (p[1], p[0])


def _rot(p):
    return (_CENTER - p[0], _CENTER - p[1])


def _rot_diag(p):
    return _rot(_diag(p))


# per frame index i: (point transform, corner-index permutation, square map)
_DIAG_IDX = {1: 1, 2: 4, 3: 3, 4: 2}
_ROT_IDX = {1: 3, 2: 4, 3: 1, 4: 2}
_ROT_SQ = {"a": "c", "b": "b", "c": "a"}

_FRAME_SETUP: dict[int, tuple[Callable, Callable]] = {
    3: (_ident, lambda c, k: (c, k)),
    2: (_diag, lambda c, k: (c, _DIAG_IDX[k])),
    1: (_rot, lambda c, k: (_ROT_SQ[c], _ROT_IDX[k])),
    4: (_rot_diag, lambda c, k: (_ROT_SQ[c], _ROT_IDX[_DIAG_IDX[k]])),
}


def build_counterexample_storyplan() -> Storyplan:
    g = build_counterexample()
    pos: dict[str, Point] = {}
    bends: dict[tuple[str, str], tuple[Point, ...]] = {}

    for c in "abc":
        for k in range(1, 5):
            pos[f"{c}{k}"] = pt(*_corner(c, k))

    def set_bends(u: str, v: str, bend_pts):
        # stored oriented from min label to max label
        key = edge_key(u, v)
        seq = tuple(pt(*b) for b in bend_pts)
        if (u, v) != key:
            seq = tuple(reversed(seq))
        bends[key] = seq

    for i in range(1, 5):
        transform, vmap = _FRAME_SETUP[i]
        qpos, rpos = transform(_F3_Q), transform(_F3_R)
        for j in (1, 2):
            q, r = f"q_{i}^{j}", f"r_{i}^{j}"
            pos[q] = pt(*qpos)
            pos[r] = pt(*rpos)
            for (c, k), route in _F3_Q_BENDS.items():
                tc, tk = vmap(c, k)
                set_bends(q, f"{tc}{tk}", [transform(b) for b in route])
            set_bends(r, q, [transform(b) for b in _F3_RQ_BENDS])
            for c in "abc":
                for k in (3, 4):
                    tc, tk = vmap(c, k)
                    set_bends(r, f"{tc}{tk}", [])

    for e in g.edges:
        bends.setdefault(e, ())

    visible: dict[str, Interval] = {}
    for v in CYCLE_LABELS:
        visible[v] = Interval(1, 8)
    for j in (1, 2):
        for i in range(1, 5):
            t = (j - 1) * 4 + i
            visible[f"q_{i}^{j}"] = Interval(t, t)
            visible[f"r_{i}^{j}"] = Interval(t, t)

    return Storyplan(Schedule(8, visible), Drawing(pos, bends))

"""Labeled simple undirected graphs with planarity screening.

Vertices are stable string labels (gadget names like "q_3^2" or "x2.A.1"
are part of the public surface).  The Euler-bound screening is our own;
the full planarity test delegates to networkx's linear-time check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

import networkx as nx

from .errors import ParseError


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]          # canonical (min,max) pairs, sorted
    tags: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_vset", frozenset(self.vertices))
        object.__setattr__(self, "_eset", frozenset(self.edges))
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", adj)

    @property
    def vertex_set(self) -> frozenset:
        return self._vset

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self._eset

    def neighbors(self, v: str) -> set[str]:
        return set(self._adj[v])

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def num_vertices(self) -> int:
        return len(self.vertices)

    def num_edges(self) -> int:
        return len(self.edges)


def build_graph(labels: Sequence[str], edge_pairs: Iterable[Sequence[str]],
                tags: Optional[Mapping[str, str]] = None) -> Graph:
    """Construct a Graph, deduplicating edges; rejects loops and bad labels."""
    labels = list(labels)
    seen = set()
    for lab in labels:
        if lab in seen:
            raise ValueError(f"duplicate label {lab!r}")
        seen.add(lab)
    edges = set()
    for pair in edge_pairs:
        u, v = pair
        if u == v:
            raise ValueError(f"loop at {u!r}")
        if u not in seen or v not in seen:
            missing = u if u not in seen else v
            raise ValueError(f"unknown endpoint {missing!r}")
        edges.add(edge_key(u, v))
    tags = dict(tags) if tags else {}
    for lab in tags:
        if lab not in seen:
            raise ValueError(f"tag for unknown vertex {lab!r}")
    return Graph(tuple(labels), tuple(sorted(edges)), tags)


def induced_subgraph(g: Graph, s: Iterable[str]) -> Graph:
    s = set(s)
    unknown = s - g.vertex_set
    if unknown:
        raise ValueError(f"unknown vertex {sorted(unknown)[0]!r}")
    verts = tuple(v for v in g.vertices if v in s)
    edges = tuple(e for e in g.edges if e[0] in s and e[1] in s)
    tags = {k: t for k, t in g.tags.items() if k in s}
    return Graph(verts, edges, tags)


class PlanarityStatus(Enum):
    CERTIFIED_NONPLANAR = "certified-nonplanar"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PlanarityVerdict:
    status: PlanarityStatus
    reason: str


def is_bipartite(g: Graph) -> bool:
    """BFS 2-coloring per component."""
    color: dict[str, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def euler_nonplanarity_check(g: Graph) -> PlanarityVerdict:
    """Edge-count screening: |E| > 3|V|-6, or 2|V|-4 for bipartite graphs.

    The bipartite bound is strictly stronger where it applies, so it is
    reported in preference to the general one.
    """
    n, m = g.num_vertices(), g.num_edges()
    if n >= 3 and is_bipartite(g) and m > 2 * n - 4:
        return PlanarityVerdict(
            PlanarityStatus.CERTIFIED_NONPLANAR,
            f"bipartite and |E| = {m} > 2|V|-4 = {2 * n - 4}")
    if n >= 3 and m > 3 * n - 6:
        return PlanarityVerdict(
            PlanarityStatus.CERTIFIED_NONPLANAR,
            f"|E| = {m} > 3|V|-6 = {3 * n - 6}")
    return PlanarityVerdict(PlanarityStatus.INCONCLUSIVE,
                            f"|V| = {n}, |E| = {m}: no bound violated")


def is_planar(g: Graph) -> bool:
    gx = nx.Graph()
    gx.add_nodes_from(g.vertices)
    gx.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(gx, counterexample=False)
    return ok


# ---------------------------------------------------------------------------
# graph file format


def write_graph_json(g: Graph) -> str:
    doc = {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }
    if g.tags:
        doc["tags"] = {k: g.tags[k] for k in sorted(g.tags)}
    return json.dumps(doc, indent=2) + "\n"


def read_graph_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise ParseError("graph document needs 'vertices' and 'edges'")
    try:
        return build_graph(doc["vertices"], doc["edges"], doc.get("tags"))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

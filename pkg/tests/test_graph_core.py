import itertools
import random

import pytest

from storyplans.graph_core import (PlanarityStatus, build_graph,
                                   euler_nonplanarity_check, induced_subgraph,
                                   is_planar, read_graph_json, write_graph_json)
from storyplans.counterexample import build_counterexample
from storyplans.errors import ParseError


def complete_graph(n):
    labels = [f"v{i}" for i in range(n)]
    return build_graph(labels, itertools.combinations(labels, 2))


def complete_bipartite(a, b):
    left = [f"l{i}" for i in range(a)]
    right = [f"r{i}" for i in range(b)]
    return build_graph(left + right, itertools.product(left, right))


def test_build_graph_examples():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert g.num_vertices() == 3 and g.num_edges() == 3
    g = build_graph(["a"], [])
    assert g.num_vertices() == 1 and g.num_edges() == 0
    g = build_graph(["a", "b"], [("a", "b"), ("b", "a")])
    assert g.num_edges() == 1


def test_build_graph_errors():
    with pytest.raises(ValueError):
        build_graph(["a", "a"], [])
    with pytest.raises(ValueError):
        build_graph(["a"], [("a", "b")])
    with pytest.raises(ValueError):
        build_graph(["a"], [("a", "a")])


def test_induced_subgraph_examples():
    k5 = complete_graph(5)
    tri = induced_subgraph(k5, {"v0", "v1", "v2"})
    assert tri.num_vertices() == 3 and tri.num_edges() == 3
    g = build_counterexample()
    s = {"a1", "a2", "a3", "a4", "q_1^1", "r_1^1"}
    sub = induced_subgraph(g, s)
    assert sub.num_vertices() == 6
    expected = {("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a1", "a4"),
                ("q_1^1", "r_1^1"),
                ("a1", "q_1^1"), ("a2", "q_1^1"), ("a3", "q_1^1"), ("a4", "q_1^1"),
                ("a1", "r_1^1"), ("a2", "r_1^1")}
    assert set(sub.edges) == {tuple(sorted(e)) for e in expected}
    assert sub.num_edges() == 11
    empty = induced_subgraph(g, set())
    assert empty.num_vertices() == 0 and empty.num_edges() == 0
    with pytest.raises(ValueError):
        induced_subgraph(k5, {"nope"})


def test_induced_subgraph_monotone():
    rng = random.Random(3)
    g = complete_graph(8)
    for _ in range(30):
        s = {v for v in g.vertices if rng.random() < 0.7}
        s2 = {v for v in s if rng.random() < 0.7}
        big = induced_subgraph(g, s)
        small = induced_subgraph(g, s2)
        assert set(small.edges) <= set(big.edges)


def test_euler_examples():
    v = euler_nonplanarity_check(complete_bipartite(3, 8))
    assert v.status is PlanarityStatus.CERTIFIED_NONPLANAR
    assert "24" in v.reason and "18" in v.reason
    v = euler_nonplanarity_check(complete_bipartite(4, 8))
    assert v.status is PlanarityStatus.CERTIFIED_NONPLANAR
    # a 14-vertex graph with 37 edges violates |E| <= 3|V| - 6 = 36
    labels = [f"v{i}" for i in range(14)]
    edges = list(itertools.combinations(labels, 2))[:37]
    v = euler_nonplanarity_check(build_graph(labels, edges))
    assert v.status is PlanarityStatus.CERTIFIED_NONPLANAR
    assert "37" in v.reason and "36" in v.reason
    v = euler_nonplanarity_check(complete_graph(4))
    assert v.status is PlanarityStatus.INCONCLUSIVE


def test_is_planar_examples():
    assert is_planar(complete_graph(4))
    assert not is_planar(complete_graph(5))
    assert not is_planar(complete_bipartite(3, 3))
    assert not is_planar(complete_bipartite(3, 8))
    assert not is_planar(complete_bipartite(4, 8))


def _all_graphs(n):
    labels = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(labels, 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(labels, [pairs[i] for i in range(len(pairs))
                                   if mask >> i & 1])


def test_screening_agrees_with_planarity_small():
    # exhaustive up to 5 vertices; certified-nonplanar must imply nonplanar
    for n in range(1, 6):
        for g in _all_graphs(n):
            if (euler_nonplanarity_check(g).status
                    is PlanarityStatus.CERTIFIED_NONPLANAR):
                assert not is_planar(g)


def test_screening_agrees_with_planarity_sampled():
    rng = random.Random(99)
    for n in (6, 7, 8):
        labels = [f"v{i}" for i in range(n)]
        pairs = list(itertools.combinations(labels, 2))
        for _ in range(400):
            edges = [e for e in pairs if rng.random() < rng.random()]
            g = build_graph(labels, edges)
            if (euler_nonplanarity_check(g).status
                    is PlanarityStatus.CERTIFIED_NONPLANAR):
                assert not is_planar(g)


def test_is_planar_relabeling_invariant():
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randint(4, 8)
        labels = [f"v{i}" for i in range(n)]
        pairs = [e for e in itertools.combinations(labels, 2)
                 if rng.random() < 0.5]
        g = build_graph(labels, pairs)
        perm = labels[:]
        rng.shuffle(perm)
        mapping = dict(zip(labels, perm))
        g2 = build_graph(perm, [(mapping[u], mapping[v]) for u, v in pairs])
        assert is_planar(g) == is_planar(g2)


def test_graph_json_roundtrip():
    g = build_graph(["b", "a", "c"], [("a", "b"), ("c", "b")], {"a": "role:x"})
    text = write_graph_json(g)
    g2 = read_graph_json(text)
    assert set(g2.vertices) == set(g.vertices)
    assert set(g2.edges) == set(g.edges)
    assert g2.tags == dict(g.tags)
    assert write_graph_json(g2) == text
    with pytest.raises(ParseError):
        read_graph_json("{nope")
    with pytest.raises(ParseError):
        read_graph_json('{"vertices": ["a"], "edges": [["a", "zz"]]}')

"""Acceptance suite: one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
are produced.  Criterion 2 is the long one (a few minutes: the exhaustive
grid of quadrilaterals).
"""

import itertools
import random
import time
from collections import Counter

from storyplans.counterexample import (build_counterexample,
                                       build_counterexample_storyplan)
from storyplans.geom import pt
from storyplans.graph_core import (PlanarityStatus, build_graph,
                                   euler_nonplanarity_check, is_planar,
                                   write_graph_json)
from storyplans.reduction import (Formula, brute_force_one_in_three,
                                  build_reduction, clause_u_label,
                                  reduce_and_certify, special_label,
                                  wire_label)
from storyplans.storyplan import (Drawing, Interval, Mode, Schedule, Storyplan,
                                  ViolationCode, frame_graph,
                                  validate_storyplan, write_storyplan)
from storyplans.suites import (run_containment_suite, run_good_edges_suite,
                               run_inner_face_suite, run_mirror_suite,
                               run_no_mutual_suite)


def _report(name: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {name}: {status} {detail}".rstrip())
    return ok


def test_criterion_1_counterexample_fidelity():
    t0 = time.perf_counter()
    g = build_counterexample()
    plan = build_counterexample_storyplan()
    ok = g.num_vertices() == 28 and g.num_edges() == 164
    degs = Counter(g.degree(v) for v in g.vertices)
    ok &= degs == {14: 12, 13: 8, 7: 8}
    ok &= plan.schedule.num_frames == 8
    for c in "abc":
        for i in range(1, 5):
            ok &= plan.schedule.visible[f"{c}{i}"] == Interval(1, 8)
    for j in (1, 2):
        for i in range(1, 5):
            t = (j - 1) * 4 + i
            ok &= plan.schedule.visible[f"q_{i}^{j}"] == Interval(t, t)
            ok &= plan.schedule.visible[f"r_{i}^{j}"] == Interval(t, t)
    ok &= validate_storyplan(g, plan, Mode.TOPOLOGICAL_PL).valid
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1.0
    assert _report("criterion 1 (counterexample fidelity)", ok,
                   f"({elapsed:.2f}s)")


def test_criterion_2_good_edges_grid():
    t0 = time.perf_counter()
    res = run_good_edges_suite(4, verify_witnesses=True)
    elapsed = time.perf_counter() - t0
    ok = res.ok and res.checked > 1000 and elapsed < 600
    assert _report("criterion 2 (two-good-edges grid suite)", ok,
                   f"({res.checked} quads, {elapsed:.0f}s)"), res.failures[:5]


def test_criterion_3_precedes_suites():
    r1 = run_no_mutual_suite(samples=10000)
    r2 = run_containment_suite(samples=2000)
    r3 = run_mirror_suite(samples=2000)
    r4 = run_inner_face_suite(samples=1000)
    ok = (r1.ok and r1.checked >= 10000 and r2.ok and r3.ok
          and r4.ok and r4.checked >= 1000)
    assert _report(
        "criterion 3 (precedes suites)", ok,
        f"(mutual {r1.checked}, containment {r2.checked}, "
        f"mirror {r3.checked}, inner-face {r4.checked})"), (
        r1.failures[:3] + r2.failures[:3] + r3.failures[:3] + r4.failures[:3])


def _complete_bipartite(a, b):
    left = [f"l{i}" for i in range(a)]
    right = [f"r{i}" for i in range(b)]
    return build_graph(left + right, itertools.product(left, right))


def _complete(n):
    labels = [f"v{i}" for i in range(n)]
    return build_graph(labels, itertools.combinations(labels, 2))


def test_criterion_4_counting_checks():
    k38 = _complete_bipartite(3, 8)
    k48 = _complete_bipartite(4, 8)
    v38 = euler_nonplanarity_check(k38)
    v48 = euler_nonplanarity_check(k48)
    ok = v38.status is PlanarityStatus.CERTIFIED_NONPLANAR
    ok &= "24" in v38.reason and "18" in v38.reason
    ok &= v48.status is PlanarityStatus.CERTIFIED_NONPLANAR
    ok &= "32" in v48.reason and "20" in v48.reason
    labels = [f"v{i}" for i in range(14)]
    g37 = build_graph(labels, list(itertools.combinations(labels, 2))[:37])
    v37 = euler_nonplanarity_check(g37)
    ok &= v37.status is PlanarityStatus.CERTIFIED_NONPLANAR
    ok &= "37" in v37.reason and "36" in v37.reason
    ok &= not is_planar(_complete(5))
    ok &= not is_planar(_complete_bipartite(3, 3))
    ok &= not is_planar(k38) and not is_planar(k48)
    ok &= is_planar(_complete(4))
    g = build_counterexample()
    plan = build_counterexample_storyplan()
    for t in range(1, 9):
        ok &= is_planar(frame_graph(g, plan.schedule, t))
    assert _report("criterion 4 (counting checks)", ok)


def _random_formula(rng):
    n = rng.randint(3, 10)
    m = rng.randint(0, 8)
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(n, tuple(clauses))


def test_criterion_5_reduction_sizing():
    rng = random.Random(20240806)
    ok = True
    for _ in range(100):
        f = _random_formula(rng)
        g, _ = build_reduction(f)
        n, m = f.num_vars, len(f.clauses)
        ok &= g.num_vertices() == 6 * n + 18 * m
        ok &= g.num_edges() == 9 * n + 75 * m
        for p in range(1, m + 1):
            for j in (1, 2, 3):
                ok &= g.degree(wire_label(p, j, 1)) == 6
                ok &= g.degree(special_label(p, j)) == 7
                ok &= g.degree(clause_u_label(p, j, 2)) == 8
    assert _report("criterion 5 (reduction sizing, 100 formulas)", ok)


ACCEPTANCE_FORMULAS = [
    Formula(3, ((1, 2, 3),)),
    Formula(3, ((-1, 2, -3),)),
    Formula(4, ((1, 2, 3), (2, 3, 4))),
    Formula(5, ((1, 2, 3), (3, 4, 5), (1, 3, 5))),
    Formula(6, ((1, 2, 3), (4, 5, 6), (1, 5, 6), (2, 3, 4))),
]


def test_criterion_6_reduction_end_to_end():
    t0 = time.perf_counter()
    ok = True
    for f in ACCEPTANCE_FORMULAS:
        a = brute_force_one_in_three(f)
        ok &= a is not None
        bundle = reduce_and_certify(f)
        plan = bundle.storyplan
        ok &= plan is not None
        n, m = f.num_vars, len(f.clauses)
        ok &= plan.schedule.num_frames == 1 + 3 * n + 8 * m
        ok &= validate_storyplan(bundle.graph, plan, Mode.GEOMETRIC).valid
        ok &= frame_graph(bundle.graph, plan.schedule, 1).num_edges() == 0
        for u, v in bundle.graph.edges:
            iu, iv = plan.schedule.visible[u], plan.schedule.visible[v]
            ok &= max(iu.s, iv.s) <= min(iu.e, iv.e)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    assert _report("criterion 6 (reduction end-to-end)", ok,
                   f"({len(ACCEPTANCE_FORMULAS)} formulas, {elapsed:.1f}s)")


def test_criterion_7_validator_negatives():
    ok = True

    def plan_of(positions, intervals, edges, frames, bends=None):
        g = build_graph(sorted(positions), edges)
        b = {e: () for e in g.edges}
        if bends:
            b.update(bends)
        return g, Storyplan(
            Schedule(frames, {v: Interval(*iv) for v, iv in intervals.items()}),
            Drawing({v: pt(*p) for v, p in positions.items()}, b))

    g, plan = plan_of({"a": (0, 0), "b": (2, 2), "c": (0, 2), "d": (2, 0)},
                      {v: (1, 1) for v in "abcd"},
                      [("a", "b"), ("c", "d")], 1)
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.EDGE_CROSSING}

    g, plan = plan_of({"a": (0, 0), "b": (2, 0), "w": (1, 0)},
                      {v: (1, 1) for v in "abw"}, [("a", "b")], 1)
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.VERTEX_ON_EDGE}

    g, plan = plan_of({"u": (0, 0), "v": (1, 0)}, {"u": (1, 2), "v": (3, 4)},
                      [("u", "v")], 4)
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.EDGE_NEVER_VISIBLE}

    g, plan = plan_of({"u": (0, 0)}, {"u": (5, 3)}, [], 8)
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.MALFORMED_INTERVAL}

    g, plan = plan_of({"a": (0, 0), "b": (4, 0)}, {"a": (1, 1), "b": (1, 1)},
                      [("a", "b")], 1, bends={("a", "b"): (pt(2, 1),)})
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.BENDS_IN_GEOMETRIC_MODE}
    ok &= validate_storyplan(g, plan, Mode.TOPOLOGICAL_PL).valid

    g, plan = plan_of({"a": (0, 0), "b": (0, 0)}, {"a": (1, 1), "b": (1, 1)},
                      [], 1)
    ok &= validate_storyplan(g, plan, Mode.GEOMETRIC).codes() == {
        ViolationCode.DUPLICATE_POSITION}

    assert _report("criterion 7 (validator negatives)", ok)


def test_criterion_8_determinism(tmp_path):
    runs = []
    for sub in ("one", "two"):
        d = tmp_path / sub
        d.mkdir()
        g = build_counterexample()
        plan = build_counterexample_storyplan()
        (d / "graph.json").write_text(write_graph_json(g))
        (d / "storyplan.json").write_text(write_storyplan(g, plan))
        rng = random.Random(20240806)
        sizes = []
        for _ in range(100):
            f = _random_formula(rng)
            gr, _ = build_reduction(f)
            sizes.append(write_graph_json(gr))
        (d / "reductions.json").write_text("\n".join(sizes))
        plans = []
        for f in ACCEPTANCE_FORMULAS:
            bundle = reduce_and_certify(f)
            plans.append(write_storyplan(bundle.graph, bundle.storyplan))
        (d / "plans.json").write_text("\n".join(plans))
        runs.append(d)
    ok = True
    for name in ("graph.json", "storyplan.json", "reductions.json", "plans.json"):
        ok &= ((runs[0] / name).read_bytes() == (runs[1] / name).read_bytes())
    assert _report("criterion 8 (determinism)", ok)

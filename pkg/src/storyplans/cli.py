"""Command-line interface.

Exit codes: 0 success/valid/SAT, 1 invalid/UNSAT/predicate-false,
2 usage error, 3 unreadable or malformed input.
Diagnostics go to stderr; results go to stdout or to output files,
which are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .errors import CoverageError, ParseError
from .geom import format_rational, parse_rational
from .graph_core import read_graph_json, write_graph_json
from .storyplan import (Mode, read_storyplan, render_frames_svg,
                        validate_storyplan, write_storyplan)
from .counterexample import build_counterexample, build_counterexample_storyplan
from .quads import good_edges, make_quad, precedes
from .reduction import (assignment_string, brute_force_one_in_three,
                        build_reduction, check_one_in_three, parse_assignment,
                        parse_formula, synthesize_storyplan)
from . import suites

OK, FAIL, USAGE, UNREADABLE = 0, 1, 2, 3


def _write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _parse_quad_literal(text: str):
    tokens = text.split()
    if len(tokens) != 4:
        raise ParseError(f"quad literal needs 4 corners, got {len(tokens)}")
    corners = []
    for tok in tokens:
        parts = tok.split(",")
        if len(parts) != 2:
            raise ParseError(f"corner {tok!r} is not 'x,y'")
        corners.append((parse_rational(parts[0]), parse_rational(parts[1])))
    try:
        return make_quad(corners)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _cmd_counterexample(ns) -> int:
    g = build_counterexample()
    plan = build_counterexample_storyplan()
    outdir = Path(ns.outdir)
    _write_atomic(outdir / "graph.json", write_graph_json(g))
    _write_atomic(outdir / "storyplan.json", write_storyplan(g, plan))
    print(outdir / "graph.json")
    print(outdir / "storyplan.json")
    return OK


def _cmd_validate(ns) -> int:
    g, plan = read_storyplan(_read_text(ns.plan))
    if ns.graph:
        g2 = read_graph_json(_read_text(ns.graph))
        if set(g2.vertices) != set(g.vertices) or set(g2.edges) != set(g.edges):
            print("CoverageMismatch: graph file disagrees with the storyplan")
            return FAIL
    mode = Mode.GEOMETRIC if ns.mode == "geometric" else Mode.TOPOLOGICAL_PL
    try:
        report = validate_storyplan(g, plan, mode)
    except CoverageError as exc:
        print(f"CoverageMismatch: {exc}")
        return FAIL
    if report.valid:
        print("VALID")
        return OK
    for v in report.violations:
        frame = "-" if v.frame is None else v.frame
        print(f"{v.code.value} frame={frame} {v.message}")
    return FAIL


def _cmd_reduce(ns) -> int:
    f = parse_formula(_read_text(ns.cnf))
    g, _ = build_reduction(f)
    _write_atomic(ns.out, write_graph_json(g))
    print(ns.out)
    return OK


def _cmd_solve13(ns) -> int:
    f = parse_formula(_read_text(ns.cnf))
    a = brute_force_one_in_three(f)
    if a is None:
        print("UNSAT")
        return FAIL
    print(assignment_string(a))
    return OK


def _cmd_synthesize(ns) -> int:
    f = parse_formula(_read_text(ns.cnf))
    if ns.assignment:
        a = parse_assignment(ns.assignment)
        if len(a) != f.num_vars:
            raise ParseError(
                f"assignment length {len(a)} != {f.num_vars} variables")
        if not check_one_in_three(f, a):
            print("NOT-ONE-IN-THREE", file=sys.stderr)
            return FAIL
    else:
        a = brute_force_one_in_three(f)
        if a is None:
            print("UNSAT")
            return FAIL
    g, gm = build_reduction(f)
    plan = synthesize_storyplan(f, a, gm)
    report = validate_storyplan(g, plan, Mode.GEOMETRIC)
    if not report.valid:  # construction guarantee; never expected
        print("synthesis produced an invalid plan", file=sys.stderr)
        return FAIL
    _write_atomic(ns.out, write_storyplan(g, plan))
    print(ns.out)
    return OK


def _cmd_render(ns) -> int:
    g, plan = read_storyplan(_read_text(ns.plan))
    files = render_frames_svg(g, plan, ns.outdir)
    for name in files:
        print(name)
    return OK


def _cmd_quad_good_edges(ns) -> int:
    q = _parse_quad_literal(ns.quad)
    ge = good_edges(q)
    if not ge:
        print("NONE")
        return FAIL
    for k in sorted(ge):
        w = ge[k]
        print(f"{k} {format_rational(w.x)} {format_rational(w.y)}")
    return OK


def _cmd_quad_precedes(ns) -> int:
    q1 = _parse_quad_literal(ns.quad1)
    q2 = _parse_quad_literal(ns.quad2)
    result = precedes(q1, q2)  # ValueError (boundaries intersect) -> usage
    print("TRUE" if result else "FALSE")
    return OK if result else FAIL


def _cmd_lemmas(ns) -> int:
    def log(msg):
        print(msg, file=sys.stderr)

    runs = [
        ("good-edges", lambda: suites.run_good_edges_suite(
            ns.grid, progress=lambda n: log(f"  ... {n} quads"))),
        ("no-mutual-precedes", lambda: suites.run_no_mutual_suite(
            samples=ns.samples, seed=ns.seed)),
        ("containment-case-1", lambda: suites.run_containment_suite(
            samples=max(1, ns.samples // 5), seed=ns.seed + 1)),
        ("mirror-pairs", lambda: suites.run_mirror_suite(
            samples=max(1, ns.samples // 5), seed=ns.seed + 2)),
        ("inner-face-implication", lambda: suites.run_inner_face_suite(
            samples=max(1, ns.samples // 10), seed=ns.seed + 3)),
    ]
    all_ok = True
    for name, fn in runs:
        log(f"running {name} ...")
        res = fn()
        status = "ok" if res.ok else "FAIL"
        print(f"{name}: {res.checked} checked, {status}")
        for f in res.failures[:10]:
            print(f"  {f}")
        all_ok = all_ok and res.ok
    return OK if all_ok else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="storyplans")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("counterexample",
                       help="emit the counterexample graph and its storyplan")
    s.add_argument("--outdir", default=".")
    s.set_defaults(fn=_cmd_counterexample)

    s = sub.add_parser("validate", help="validate a storyplan file")
    s.add_argument("--plan", required=True)
    s.add_argument("--graph")
    s.add_argument("--mode", choices=("geometric", "topological"),
                   required=True)
    s.set_defaults(fn=_cmd_validate)

    s = sub.add_parser("reduce", help="compile a CNF into the gadget graph")
    s.add_argument("--cnf", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_reduce)

    s = sub.add_parser("solve13", help="brute-force one-in-three solver")
    s.add_argument("--cnf", required=True)
    s.set_defaults(fn=_cmd_solve13)

    s = sub.add_parser("synthesize",
                       help="CNF to certified geometric storyplan")
    s.add_argument("--cnf", required=True)
    s.add_argument("--assignment")
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_synthesize)

    s = sub.add_parser("render", help="render storyplan frames as SVG")
    s.add_argument("--plan", required=True)
    s.add_argument("--outdir", required=True)
    s.set_defaults(fn=_cmd_render)

    q = sub.add_parser("quad", help="quadrilateral predicates")
    qsub = q.add_subparsers(dest="quad_command", required=True)
    s = qsub.add_parser("good-edges")
    s.add_argument("quad", help='corners as "x1,y1 x2,y2 x3,y3 x4,y4"')
    s.set_defaults(fn=_cmd_quad_good_edges)
    s = qsub.add_parser("precedes")
    s.add_argument("quad1")
    s.add_argument("quad2")
    s.set_defaults(fn=_cmd_quad_precedes)

    s = sub.add_parser("lemmas", help="run the quadrilateral property suites")
    s.add_argument("--grid", type=int, default=4)
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=20240801)
    s.set_defaults(fn=_cmd_lemmas)
    return p


def run(args) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(list(args))
    except SystemExit as exc:
        return OK if exc.code in (0, None) else USAGE
    try:
        return ns.fn(ns)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return UNREADABLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))

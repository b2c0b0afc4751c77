"""One-In-3SAT reduction: gadget graphs and certified geometric storyplans.

The reduction graph has a K_{3,3} per variable (v-sides A_i, B_i), an
extended K_{2,2,2} per clause (parts U_1..U_3 plus pairwise-adjacent
special vertices s_1..s_3), and a 3-vertex wire gadget per literal
occurrence joined completely to its clause part and to its variable side
(A for positive, B for negative).

Given a one-in-three satisfying assignment the synthesizer emits a
straight-line storyplan with 1 + 3n + 8m frames:

* wires sit on the horizontal wire-line y = 0, grouped by variable;
  the v-side columns of variable i flank its wires;
* the always-visible set V_f (chosen v-sides plus the true literals'
  wires) is edgeless in frame 1;
* each hidden v-side vertex gets one frame of its own;
* each clause gets eight frames: its specials live far above the
  wire-line, the true literal's U-pair just below it, and the U-parts of
  the two false literals form a huge convex quadrilateral that encloses
  the whole construction while visible.

Heights and corner magnitudes are chosen so that long segments clear the
populated band by construction; the validator re-checks every frame.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ParseError
from .geom import Point, orientation, pt
from .graph_core import Graph, build_graph
from .storyplan import (Drawing, Interval, Mode, Schedule, Storyplan,
                        validate_storyplan)

Assignment = tuple  # of bools, length num_vars


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} must have 3 literals")
            vs = [abs(l) for l in clause]
            if 0 in clause:
                raise ValueError("literal 0 is not allowed")
            if len(set(vs)) != 3:
                raise ValueError(f"clause {clause} repeats a variable")
            if any(v > self.num_vars for v in vs):
                raise ValueError(f"clause {clause} exceeds variable range")


def parse_formula(text: str) -> Formula:
    """DIMACS subset: comments, 'p cnf n m', then m three-literal clauses."""
    header = None
    clause_tokens: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header line")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise ParseError(f"bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise ParseError(f"bad header {line!r}") from exc
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"bad header {line!r}")
            continue
        if header is None:
            raise ParseError("clause before header")
        try:
            clause_tokens.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise ParseError(f"bad literal in {line!r}") from exc
    if header is None:
        raise ParseError("missing 'p cnf' header")
    n, m = header
    clauses: list[tuple[int, int, int]] = []
    current: list[int] = []
    for tok in clause_tokens:
        if tok == 0:
            if len(current) != 3:
                raise ParseError(f"clause {current} does not have 3 literals")
            clauses.append(tuple(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise ParseError("clause not terminated by 0")
    if len(clauses) != m:
        raise ParseError(f"expected {m} clauses, found {len(clauses)}")
    for clause in clauses:
        vs = [abs(l) for l in clause]
        if len(set(vs)) != 3:
            raise ParseError(f"clause {clause} repeats a variable")
        if any(v > n for v in vs):
            raise ParseError(f"clause {clause} exceeds variable range 1..{n}")
    return Formula(n, tuple(clauses))


def check_one_in_three(f: Formula, a: Sequence[bool]) -> bool:
    """Exactly one true literal in every clause."""
    if len(a) != f.num_vars:
        raise ValueError(f"assignment length {len(a)} != {f.num_vars}")
    for clause in f.clauses:
        true_count = sum(1 for lit in clause
                         if a[abs(lit) - 1] == (lit > 0))
        if true_count != 1:
            return False
    return True


BRUTE_FORCE_GUARD = 24


def brute_force_one_in_three(f: Formula) -> Optional[Assignment]:
    """Lexicographically smallest (F < T, index order) valid assignment."""
    if f.num_vars > BRUTE_FORCE_GUARD:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_GUARD} variables")
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if check_one_in_three(f, bits):
            return bits
    return None


def assignment_string(a: Sequence[bool]) -> str:
    return "".join("T" if b else "F" for b in a)


def parse_assignment(text: str) -> Assignment:
    text = text.strip()
    if any(ch not in "TF" for ch in text):
        raise ParseError(f"assignment must be a string of T/F, got {text!r}")
    return tuple(ch == "T" for ch in text)


# ---------------------------------------------------------------------------
# gadget graph


@dataclass(frozen=True)
class Role:
    kind: str                      # vside | clause_u | special | wire
    var: Optional[int] = None
    side: Optional[str] = None     # A | B
    clause: Optional[int] = None
    part: Optional[int] = None     # c-side / slot index 1..3
    index: Optional[int] = None

    def tag(self) -> str:
        if self.kind == "vside":
            return f"vside:{self.var}:{self.side}:{self.index}"
        if self.kind == "clause_u":
            return f"clause-u:{self.clause}:{self.part}:{self.index}"
        if self.kind == "special":
            return f"special:{self.clause}:{self.part}"
        return f"wire:{self.clause}:{self.part}:{self.index}"


GadgetMap = dict


def vside_label(i: int, side: str, k: int) -> str:
    return f"x{i}.{side}.{k}"


def clause_u_label(p: int, j: int, k: int) -> str:
    return f"c{p}.u{j}.{k}"


def special_label(p: int, j: int) -> str:
    return f"c{p}.s{j}"


def wire_label(p: int, j: int, k: int) -> str:
    return f"c{p}.w{j}.{k}"


def build_reduction(f: Formula) -> tuple[Graph, GadgetMap]:
    """|V| = 6n + 18m, |E| = 9n + 75m; slot j hosts the clause's j-th literal."""
    labels: list[str] = []
    roles: GadgetMap = {}
    edges: list[tuple[str, str]] = []

    for i in range(1, f.num_vars + 1):
        for side in "AB":
            for k in (1, 2, 3):
                lab = vside_label(i, side, k)
                labels.append(lab)
                roles[lab] = Role("vside", var=i, side=side, index=k)
        for k in (1, 2, 3):
            for k2 in (1, 2, 3):
                edges.append((vside_label(i, "A", k), vside_label(i, "B", k2)))

    for p, clause in enumerate(f.clauses, start=1):
        for j in (1, 2, 3):
            for k in (1, 2):
                lab = clause_u_label(p, j, k)
                labels.append(lab)
                roles[lab] = Role("clause_u", clause=p, part=j, index=k)
            lab = special_label(p, j)
            labels.append(lab)
            roles[lab] = Role("special", clause=p, part=j)
            for k in (1, 2, 3):
                lab = wire_label(p, j, k)
                labels.append(lab)
                roles[lab] = Role("wire", clause=p, part=j, index=k)
        # K_{2,2,2} between distinct parts
        for j1, j2 in ((1, 2), (1, 3), (2, 3)):
            for k1 in (1, 2):
                for k2 in (1, 2):
                    edges.append((clause_u_label(p, j1, k1),
                                  clause_u_label(p, j2, k2)))
        # pairwise-adjacent specials, each attached to its part
        for j1, j2 in ((1, 2), (1, 3), (2, 3)):
            edges.append((special_label(p, j1), special_label(p, j2)))
        for j in (1, 2, 3):
            for k in (1, 2):
                edges.append((special_label(p, j), clause_u_label(p, j, k)))
        # wires: complete to the c-side, complete to the variable side
        for j, lit in enumerate(clause, start=1):
            side = "A" if lit > 0 else "B"
            var = abs(lit)
            for k in (1, 2, 3):
                w = wire_label(p, j, k)
                edges.append((w, special_label(p, j)))
                for k2 in (1, 2):
                    edges.append((w, clause_u_label(p, j, k2)))
                for k2 in (1, 2, 3):
                    edges.append((w, vside_label(var, side, k2)))

    tags = {lab: roles[lab].tag() for lab in labels}
    return build_graph(labels, edges, tags), roles


# ---------------------------------------------------------------------------
# geometric synthesis from a one-in-three satisfying assignment


@dataclass(frozen=True)
class SynthesisPlan:
    """Bookkeeping for the synthesized storyplan: which literal is the true
    one per clause, the always-visible vertex set, and the frame offsets."""
    true_literals: tuple            # one (clause, slot) per clause
    always_visible: frozenset       # V_f labels
    variable_frame: dict            # hidden v-side label -> its single frame
    clause_base: dict               # clause index -> first clause frame - 1


def plan_synthesis(f: Formula, a: Sequence[bool]) -> SynthesisPlan:
    if not check_one_in_three(f, a):
        raise ValueError("assignment is not one-in-three satisfying")
    n = f.num_vars
    true_literals = []
    always: set = set()
    variable_frame: dict = {}
    t = 2
    for i in range(1, n + 1):
        vis_side = "B" if a[i - 1] else "A"
        hid_side = "A" if a[i - 1] else "B"
        for k in (1, 2, 3):
            always.add(vside_label(i, vis_side, k))
            variable_frame[vside_label(i, hid_side, k)] = t
            t += 1
    clause_base: dict = {}
    for p, clause in enumerate(f.clauses, start=1):
        slot = next(j for j, lit in enumerate(clause, start=1)
                    if a[abs(lit) - 1] == (lit > 0))
        true_literals.append((p, slot))
        for k in (1, 2, 3):
            always.add(wire_label(p, slot, k))
        clause_base[p] = 1 + 3 * n + 8 * (p - 1)
    return SynthesisPlan(tuple(true_literals), frozenset(always),
                         variable_frame, clause_base)


@dataclass
class _Layout:
    wire_x: dict            # (p, j, k) -> int
    col_x: dict             # (i, side) -> int
    width: int


def _layout(f: Formula) -> _Layout:
    occs: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, f.num_vars + 1)}
    for p, clause in enumerate(f.clauses, start=1):
        for j, lit in enumerate(clause, start=1):
            occs[abs(lit)].append((p, j))
    wire_x: dict = {}
    col_x: dict = {}
    cur = 0
    for i in range(1, f.num_vars + 1):
        col_x[(i, "A")] = cur
        for (p, j) in sorted(occs[i]):
            for k in (1, 2, 3):
                wire_x[(p, j, k)] = cur + k
            cur += 4
        col_x[(i, "B")] = cur + 1
        cur += 3
    return _Layout(wire_x, col_x, cur)


_SIDE_HEIGHTS = {"A": (2, 4, 6), "B": (3, 5, 7)}


def synthesize_storyplan(f: Formula, a: Sequence[bool], gm: GadgetMap) -> Storyplan:
    """A zero-bend storyplan over the reduction graph, valid geometrically."""
    sp = plan_synthesis(f, a)
    n, m = f.num_vars, len(f.clauses)
    ell = 1 + 3 * n + 8 * m
    lay = _layout(f)
    big_h = 64 * (lay.width + 8)
    big = 32 * (lay.width + 8) * big_h

    pos: dict[str, Point] = {}
    visible: dict[str, Interval] = {}

    # v-side columns; visible side spans all frames, hidden side gets one
    for i in range(1, n + 1):
        for side in "AB":
            x = lay.col_x[(i, side)]
            for k in (1, 2, 3):
                lab = vside_label(i, side, k)
                pos[lab] = pt(x, _SIDE_HEIGHTS[side][k - 1])
                if lab in sp.always_visible:
                    visible[lab] = Interval(1, ell)
                else:
                    t = sp.variable_frame[lab]
                    visible[lab] = Interval(t, t)

    true_slot = dict(sp.true_literals)
    for p, clause in enumerate(f.clauses, start=1):
        base = sp.clause_base[p]

        def frame(t: int) -> int:
            return base + t

        slot_c = true_slot[p]
        by_x = sorted((1, 2, 3), key=lambda j: lay.wire_x[(p, j, 1)])
        false_slots = [j for j in by_x if j != slot_c]
        if by_x[0] == slot_c:
            # true literal leftmost: mirrored layout, a = rightmost false
            slot_a, slot_b = false_slots[1], false_slots[0]
        else:
            slot_a, slot_b = false_slots[0], false_slots[1]

        # wire positions and visibility
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                pos[wire_label(p, j, k)] = pt(lay.wire_x[(p, j, k)], 0)
        for k in (1, 2, 3):
            visible[wire_label(p, slot_c, k)] = Interval(1, ell)
            visible[wire_label(p, slot_a, k)] = Interval(frame(k), frame(k))
            visible[wire_label(p, slot_b, k)] = Interval(frame(3 + k), frame(3 + k))

        # special heights: slot_a highest; the slot in the middle of the
        # wire-line order lowest, so the triangle edge over it stays clear
        ga = [lay.wire_x[(p, slot_a, k)] for k in (1, 2, 3)]
        gb = [lay.wire_x[(p, slot_b, k)] for k in (1, 2, 3)]
        gc = [lay.wire_x[(p, slot_c, k)] for k in (1, 2, 3)]
        mid_slot = by_x[1]  # never slot_a by the choice above
        heights = {slot_a: 4 * big_h, mid_slot: 2 * big_h}
        for j in (slot_b, slot_c):
            if j != mid_slot:
                heights[j] = 3 * big_h

        # special x positions.  s_b must sit on the side of its wire group
        # facing the true literal's slab (the triangle edge to s_c must not
        # pass over the w->u_b1 pillars), and the vertical drop to u_b2 must
        # not cross the wire-to-column edges: if the column is in the way,
        # move to the free gap just outside the slab.
        sax = Fraction(ga[1])  # above the middle wire of group a, nudged below
        lit_b = clause[slot_b - 1]
        col_b_left = lit_b > 0  # positive literals attach to the A column
        var_b = abs(lit_b)
        if gc[0] > gb[0]:  # true literal's slab is to the right
            if col_b_left:
                sbx = Fraction(gb[2]) + Fraction(1, 2)
            else:
                sbx = Fraction(lay.col_x[(var_b, "B")] + 1)
        else:
            if col_b_left:
                sbx = Fraction(lay.col_x[(var_b, "A")] - 1)
            else:
                sbx = Fraction(gb[0]) - Fraction(1, 2)
        scx = Fraction(gc[2]) + Fraction(1, 2)
        sb = pt(sbx, heights[slot_b])
        sc = pt(scx, heights[slot_c])
        for _ in range(64):
            sa = pt(sax, heights[slot_a])
            if orientation(sa, sb, sc) != 0:
                break
            sax += Fraction(1, 8)
        else:
            raise RuntimeError("could not place clause special generically")
        pos[special_label(p, slot_a)] = sa
        pos[special_label(p, slot_b)] = sb
        pos[special_label(p, slot_c)] = sc
        visible[special_label(p, slot_a)] = Interval(frame(1), frame(3))
        visible[special_label(p, slot_b)] = Interval(frame(1), frame(6))
        visible[special_label(p, slot_c)] = Interval(frame(1), frame(8))

        # true literal's U-pair just below the wire-line, right of its group
        ucx1 = Fraction(gc[2]) + Fraction(3, 4)
        ucx2 = Fraction(gc[2]) + Fraction(9, 8)
        nx = Fraction(gc[2]) + Fraction(7, 8)
        pos[clause_u_label(p, slot_c, 1)] = pt(ucx1, Fraction(-1, 2))
        pos[clause_u_label(p, slot_c, 2)] = pt(ucx2, Fraction(-1, 2))
        visible[clause_u_label(p, slot_c, 1)] = Interval(frame(7), frame(7))
        visible[clause_u_label(p, slot_c, 2)] = Interval(frame(8), frame(8))

        # enclosing quadrilateral: u_a1 west, u_b1 north, u_a2 east, u_b2 south
        pos[clause_u_label(p, slot_a, 1)] = pt(-big - p, -1)
        pos[clause_u_label(p, slot_a, 2)] = pt(lay.width + big + p, -1)
        pos[clause_u_label(p, slot_b, 1)] = pt(nx, big + p)
        pos[clause_u_label(p, slot_b, 2)] = pt(sbx, -big - p)
        visible[clause_u_label(p, slot_a, 1)] = Interval(frame(1), frame(8))
        visible[clause_u_label(p, slot_a, 2)] = Interval(frame(1), frame(8))
        visible[clause_u_label(p, slot_b, 1)] = Interval(frame(4), frame(8))
        visible[clause_u_label(p, slot_b, 2)] = Interval(frame(4), frame(8))

    g, _ = build_reduction(f)
    bends = {e: () for e in g.edges}
    return Storyplan(Schedule(ell, visible), Drawing(pos, bends))


# ---------------------------------------------------------------------------
# pipeline


@dataclass(frozen=True)
class Bundle:
    graph: Graph
    gadget_map: GadgetMap
    assignment: Optional[Assignment]
    storyplan: Optional[Storyplan]


def reduce_and_certify(f: Formula) -> Bundle:
    """Build the gadget graph; if one-in-three satisfiable, synthesize and
    validate a geometric storyplan."""
    g, gm = build_reduction(f)
    a = brute_force_one_in_three(f)
    if a is None:
        return Bundle(g, gm, None, None)
    plan = synthesize_storyplan(f, a, gm)
    report = validate_storyplan(g, plan, Mode.GEOMETRIC)
    if not report.valid:
        raise RuntimeError(
            f"synthesized storyplan failed validation: {report.violations[:3]}")
    return Bundle(g, gm, a, plan)

"""Recursive constructions of heavy or spanning paths under degree conditions.

``find_path_t5``, ``find_path_t8`` and ``find_paths_t10`` realize the three
guarantee shapes: two anchored endpoints, one anchored endpoint, and the
disjoint-pair form.  Each follows an induction on the vertex count: peel the
anchor off a 2-connected remainder, or split at a cut vertex of the
remainder into two overlapping 2-connected sides, solve the sides (by
recursion, by the Dirac-type subroutine, or by the two-anchor construction),
and lift the sub-witnesses back through recorded substitutions.  Auxiliary
zero-weight edges and gadget vertices added along the way are marked on the
graph values and always substituted away before a witness is returned.

Every run returns the witness plus a ``TraceStep`` tree recording case
labels, chosen vertices, added gadget elements, and replayable path
substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .conditions import ConditionKind, d_star
from .errors import (
    GraphError,
    GuaranteeError,
    HypothesisViolationError,
    InternalConsistencyError,
)
from .graph import (
    Path,
    RationalLike,
    WeightedGraph,
    as_fraction,
    bfs_path,
    cut_vertices,
    components_after_removal,
    is_two_connected,
    make_path,
    path_weight,
)
from .oracle import OracleBudget, heaviest_xy_path

Seq = tuple[int, ...]


# -- outcomes -------------------------------------------------------------------

HEAVY_PATH = "heavy_path"
HAMILTON_PATH = "hamilton_path"
HEAVY_XY_PATH = "heavy_xy_path"
HEAVY_DISJOINT_PAIR = "heavy_disjoint_pair"
SPANNING_DISJOINT_PAIR = "spanning_disjoint_pair"


@dataclass(frozen=True)
class PathOutcome:
    """Single-path conclusion: a heavy path or a spanning path."""

    kind: str  # HEAVY_PATH | HAMILTON_PATH
    path: Path
    anchors: tuple[int, ...]


@dataclass(frozen=True)
class ThreeWayOutcome:
    """Disjoint-pair conclusion: heavy path, heavy pair, or spanning pair."""

    kind: str  # HEAVY_XY_PATH | HEAVY_DISJOINT_PAIR | SPANNING_DISJOINT_PAIR
    path: Optional[Path]
    pair: Optional[tuple[Path, Path]]
    anchors: tuple[int, int]


# -- trace ----------------------------------------------------------------------


@dataclass
class TraceStep:
    """One node of the construction's recursion tree."""

    label: str
    depth: int
    anchors: tuple[int, ...]
    threshold: str
    vertices: tuple[int, ...]
    notes: dict = field(default_factory=dict)
    ops: list = field(default_factory=list)
    children: list["TraceStep"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "depth": self.depth,
            "anchors": list(self.anchors),
            "threshold": self.threshold,
            "vertices": list(self.vertices),
            "notes": self.notes,
            "ops": self.ops,
            "children": [c.to_dict() for c in self.children],
        }


def render_trace(step: TraceStep, indent: str = "") -> str:
    """Human-readable indented text form of a trace tree."""
    bits = [f"{indent}{step.label} depth={step.depth} anchors={step.anchors} d={step.threshold}"]
    for key in sorted(step.notes):
        bits.append(f"{indent}  {key}: {step.notes[key]}")
    for op in step.ops:
        args = {k: v for k, v in op.items() if k not in ("op", "out")}
        bits.append(f"{indent}  op {op['op']} {args} -> {op['out']}")
    for child in step.children:
        bits.append(render_trace(child, indent + "    "))
    return "\n".join(bits)


# Recorded path substitutions.  Each recorder computes the result, appends a
# replayable record to the step, and returns the result.


def _rec_witness(step: TraceStep, source: str, seq: Sequence[int]) -> Seq:
    out = tuple(seq)
    step.ops.append({"op": "witness", "source": source, "out": list(out)})
    return out


def _rec_prepend(step: TraceStep, v: int, seq: Sequence[int]) -> Seq:
    out = (v,) + tuple(seq)
    step.ops.append({"op": "prepend", "vertex": v, "seq": list(seq), "out": list(out)})
    return out


def _rec_append(step: TraceStep, seq: Sequence[int], v: int) -> Seq:
    out = tuple(seq) + (v,)
    step.ops.append({"op": "append", "vertex": v, "seq": list(seq), "out": list(out)})
    return out


def _rec_reverse(step: TraceStep, seq: Sequence[int]) -> Seq:
    out = tuple(reversed(seq))
    step.ops.append({"op": "reverse", "seq": list(seq), "out": list(out)})
    return out


def _rec_drop_head(step: TraceStep, seq: Sequence[int]) -> Seq:
    out = tuple(seq[1:])
    step.ops.append({"op": "drop_head", "seq": list(seq), "out": list(out)})
    return out


def _rec_drop_tail(step: TraceStep, seq: Sequence[int]) -> Seq:
    out = tuple(seq[:-1])
    step.ops.append({"op": "drop_tail", "seq": list(seq), "out": list(out)})
    return out


def _rec_join(step: TraceStep, a: Sequence[int], b: Sequence[int]) -> Seq:
    if a[-1] != b[0]:
        raise InternalConsistencyError(f"join mismatch: {a} then {b}")
    out = tuple(a) + tuple(b[1:])
    step.ops.append({"op": "join", "a": list(a), "b": list(b), "out": list(out)})
    return out


def _rec_splice(step: TraceStep, base: Sequence[int], lo: int, hi: int, repl: Sequence[int]) -> Seq:
    if repl[0] != base[lo] or repl[-1] != base[hi]:
        raise InternalConsistencyError(f"splice endpoints mismatch: {base}[{lo}..{hi}] vs {repl}")
    out = tuple(base[:lo]) + tuple(repl) + tuple(base[hi + 1:])
    step.ops.append(
        {"op": "splice", "base": list(base), "lo": lo, "hi": hi, "repl": list(repl), "out": list(out)}
    )
    return out


def _rec_delete_edges(
    step: TraceStep, base: Sequence[int], edges: Iterable[tuple[int, int]]
) -> list[Seq]:
    cut = {frozenset(e) for e in edges}
    pieces: list[Seq] = []
    cur = [base[0]]
    for u, v in zip(base, base[1:]):
        if frozenset((u, v)) in cut:
            pieces.append(tuple(cur))
            cur = [v]
        else:
            cur.append(v)
    pieces.append(tuple(cur))
    step.ops.append(
        {
            "op": "delete_edges",
            "seq": list(base),
            "edges": sorted(sorted(e) for e in cut),
            "out": [list(p) for p in pieces],
        }
    )
    return pieces


_REPLAY = {
    "prepend": lambda op: [(op["vertex"],) + tuple(op["seq"])],
    "append": lambda op: [tuple(op["seq"]) + (op["vertex"],)],
    "reverse": lambda op: [tuple(reversed(op["seq"]))],
    "drop_head": lambda op: [tuple(op["seq"][1:])],
    "drop_tail": lambda op: [tuple(op["seq"][:-1])],
    "join": lambda op: [tuple(op["a"]) + tuple(op["b"][1:])],
    "splice": lambda op: [
        tuple(op["base"][: op["lo"]]) + tuple(op["repl"]) + tuple(op["base"][op["hi"] + 1:])
    ],
}


def _replay_delete_edges(op: dict) -> list[Seq]:
    cut = {frozenset(e) for e in op["edges"]}
    base = op["seq"]
    pieces: list[Seq] = []
    cur = [base[0]]
    for u, v in zip(base, base[1:]):
        if frozenset((u, v)) in cut:
            pieces.append(tuple(cur))
            cur = [v]
        else:
            cur.append(v)
    pieces.append(tuple(cur))
    return pieces


def verify_trace_replay(step: TraceStep) -> None:
    """Recompute every recorded substitution and compare with its recorded output.

    Raises InternalConsistencyError on any mismatch.
    """
    for op in step.ops:
        name = op["op"]
        if name == "witness":
            continue
        if name == "delete_edges":
            got: list[Seq] = _replay_delete_edges(op)
            want = [tuple(p) for p in op["out"]]
        else:
            got = _REPLAY[name](op)
            want = [tuple(op["out"])]
        if got != want:
            raise InternalConsistencyError(f"trace op {name} replays to {got}, recorded {want}")
    for child in step.children:
        verify_trace_replay(child)


# -- shared machinery -------------------------------------------------------------


class _NeedSwap(Exception):
    """Internal: the elided symmetric derivation is required; restart with anchors swapped."""


def _require_hyp(g: WeightedGraph, kind: ConditionKind, excluded: Iterable[int], d: Fraction) -> None:
    rep = d_star(g, kind, excluded)
    if d > rep.d_star:
        raise HypothesisViolationError(kind, d, rep.d_star, rep.witness_tuple)


def _assert_2conn(g: WeightedGraph, what: str) -> None:
    if not is_two_connected(g):
        raise InternalConsistencyError(f"{what} is not 2-connected as the construction requires")


def _meets(g: WeightedGraph, iw: int, d: Fraction) -> bool:
    """iw (integer at g.scale) >= d, exactly."""
    return iw >= d * g.scale


def _argmax_neighbor(g: WeightedGraph, x: int, exclude: frozenset[int]) -> int:
    """Neighbor of x outside `exclude` with maximum edge weight; ties to smallest id."""
    best = None
    best_w = -1
    for v in g.neighbors(x):
        if v in exclude:
            continue
        w = g.iweight(x, v)
        if w > best_w:
            best_w = w
            best = v
    if best is None:
        raise InternalConsistencyError(f"vertex {x} has no admissible neighbor")
    return best


def _step(label: str, depth: int, g: WeightedGraph, anchors: tuple[int, ...], d: Fraction) -> TraceStep:
    return TraceStep(label, depth, anchors, str(d), g.vertices)


def _sorted_list(vs: Iterable[int]) -> list[int]:
    return sorted(vs)


def _split_graph(
    g: WeightedGraph, x: int, z: int, side: frozenset[int]
) -> tuple[WeightedGraph, bool]:
    """G[side + {x, z}] with a zero-weight marked xz edge added when absent."""
    sub = g.induced(set(side) | {x, z})
    return sub.with_edge_if_absent(x, z, 0, aux=True)


def _real_anchor_path(g2: WeightedGraph, x: int, z: int, added_xz: bool) -> Seq:
    """An (x, z)-path in g2 avoiding the added xz edge (any such path will do)."""
    host = g2.without_edge(x, z) if added_xz else g2
    seq = bfs_path(host, x, z)
    if seq is None:
        raise InternalConsistencyError("no replacement path between the split anchors")
    return seq


def _has_consecutive(seq: Sequence[int], u: int, v: int) -> bool:
    return any({a, b} == {u, v} for a, b in zip(seq, seq[1:]))


def _max_depth(top_n: int) -> int:
    # Each recursion drops a vertex; anchor swaps restart a level in place and
    # cross-construction calls nest at most a constant number of times.
    return 3 * top_n + 6


def _check_depth(depth: int, limit: int) -> None:
    if depth > limit:
        raise InternalConsistencyError(f"recursion depth {depth} exceeds bound {limit}")


# -- Dirac-type subroutine ----------------------------------------------------------


def theorem1_subroutine(
    g: WeightedGraph,
    x: int,
    y: int,
    d: RationalLike,
    budget: Optional[OracleBudget] = None,
    check: bool = True,
) -> Path:
    """An (x, y)-path of weight >= d when every other vertex has weighted degree >= d.

    Realized by the exact search; on hypothesis-satisfying input the maximum
    is guaranteed to reach d, so a shortfall raises GuaranteeError.  A witness
    that is exactly a marked zero-weight (x, y) edge is rejected by re-running
    the search without that edge.
    """
    df = as_fraction(d)
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("theorem1_subroutine needs two distinct anchors")
    if check:
        _require_hyp(g, ConditionKind.DIRAC_MIN, (x, y), df)
    res = heaviest_xy_path(g, x, y, budget, stop_at=df)
    if res is not None and res[1].vertices == (x, y) and g.is_aux_edge(x, y):
        res = heaviest_xy_path(g.without_edge(x, y), x, y, budget, stop_at=df)
    if res is None:
        raise GuaranteeError(f"no ({x}, {y})-path exists at all")
    w, p = res
    if w < df:
        raise GuaranteeError(
            f"degree bound promises an ({x}, {y})-path of weight {df}, search peaked at {w}"
        )
    # Re-anchor the witness on g (the rerun may have used a reduced copy).
    return make_path(g, p.vertices)


# ===================================================================================
# Two-anchor construction (heavy or spanning (x, y)-path under the pair-max bound)
# ===================================================================================


def find_path_t5(
    g: WeightedGraph,
    x: int,
    y: int,
    d: RationalLike,
    budget: Optional[OracleBudget] = None,
    force: bool = False,
) -> tuple[PathOutcome, TraceStep]:
    """Heavy (x, y)-path or spanning (x, y)-path under the nonadjacent pair-max bound."""
    df = as_fraction(d)
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("anchors must be distinct")
    if not is_two_connected(g):
        raise GraphError("input graph is not 2-connected")
    check = not force
    if check:
        _require_hyp(g, ConditionKind.PAIR_MAX, (x, y), df)
    seq, trace = _t5(g, x, y, df, 0, _max_depth(g.n), budget, check)
    return _classify_single(g, seq, x, y, df), trace


def _classify_single(
    g: WeightedGraph, seq: Seq, x: int, y: Optional[int], d: Fraction
) -> PathOutcome:
    p = make_path(g, seq)
    if p.vertices[0] != x:
        raise InternalConsistencyError(f"witness does not start at {x}: {seq}")
    if y is not None and p.vertices[-1] != y:
        raise InternalConsistencyError(f"witness does not end at {y}: {seq}")
    anchors = (x,) if y is None else (x, y)
    if p.weight >= d:
        return PathOutcome(HEAVY_PATH, p, anchors)
    if len(p.vertices) == g.n:
        return PathOutcome(HAMILTON_PATH, p, anchors)
    raise InternalConsistencyError(
        f"witness {seq} is neither heavy (w={p.weight} < {d}) nor spanning"
    )


def _t5(
    g: WeightedGraph,
    x: int,
    y: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[Seq, TraceStep]:
    """Recursion wrapper: runs the body, handling one anchor swap per level."""
    _check_depth(depth, limit)
    try:
        return _t5_body(g, x, y, d, depth, limit, budget, check)
    except _NeedSwap:
        wrapper = _step("swap-anchors", depth, g, (x, y), d)
        wrapper.notes["reason"] = "no degree-2 light neighbor at the second anchor; rerun symmetrically"
        try:
            seq, child = _t5_body(g, y, x, d, depth, limit, budget, check)
        except _NeedSwap:
            raise InternalConsistencyError(
                "degree-2 light neighbor derivation failed in both orientations"
            ) from None
        wrapper.children.append(child)
        return _rec_reverse(wrapper, seq), wrapper


def _t5_body(
    g: WeightedGraph,
    x: int,
    y: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[Seq, TraceStep]:
    if check:
        _require_hyp(g, ConditionKind.PAIR_MAX, (x, y), d)

    if d <= 0:
        step = _step("threshold<=0", depth, g, (x, y), d)
        seq = bfs_path(g, x, y)
        if seq is None:
            raise InternalConsistencyError("anchors are disconnected in a 2-connected graph")
        return _rec_witness(step, "shortest-path", seq), step

    if g.n == 3:
        step = _step("base-n3", depth, g, (x, y), d)
        (z3,) = [v for v in g.vertices if v not in (x, y)]
        spanning = (x, z3, y)
        cands = [spanning]
        if g.has_edge(x, y):
            cands.append((x, y))
        heavy = [s for s in cands if path_weight(g, s) >= d]
        if heavy:
            heavy.sort(key=lambda s: (-path_weight(g, s), s))
            return _rec_witness(step, "base-heavy", heavy[0]), step
        return _rec_witness(step, "base-spanning", spanning), step

    h = g.induced(set(g.vertices) - {x})
    if is_two_connected(h):
        # Case 1: peel the first anchor, recurse with the threshold reduced by
        # the heaviest usable anchor edge.
        step = _step("case1", depth, g, (x, y), d)
        xp = _argmax_neighbor(g, x, frozenset((y,)))
        wxxp = g.weight(x, xp)
        step.notes.update({"x_prime": xp, "w_xx_prime": str(wxxp)})
        child_seq, child = _t5(h, xp, y, d - wxxp, depth + 1, limit, budget, check)
        step.children.append(child)
        return _rec_prepend(step, x, child_seq), step

    # Case 2: the remainder splits at a cut vertex.
    cuts = cut_vertices(h)
    z = cuts[0]
    comps = components_after_removal(g, {x, z})
    if y == z:
        return _t5_case21(g, x, y, z, comps, d, depth, budget)
    return _t5_case22(g, x, y, z, comps, d, depth, limit, budget, check)


def _t5_case21(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    comps: list[frozenset[int]],
    d: Fraction,
    depth: int,
    budget: Optional[OracleBudget],
) -> tuple[Seq, TraceStep]:
    # Subcase 2.1 (second anchor is the cut vertex): the side opposite the
    # globally lightest vertex is all-heavy, so the Dirac-type subroutine
    # produces the path there.
    step = _step("case2.1", depth, g, (x, y), d)
    rest = [v for v in g.vertices if v not in (x, z)]
    v0 = min(rest, key=lambda v: (g.iwdeg(v), v))
    h1 = next(c for c in comps if v0 in c)
    h2 = frozenset(v for c in comps if c is not h1 for v in c)
    g2, added = _split_graph(g, x, z, h2)
    _assert_2conn(g2, "split side G2")
    step.notes.update(
        {
            "z": z,
            "v0": v0,
            "H1": _sorted_list(h1),
            "H2": _sorted_list(h2),
            "added_xz": added,
            "subroutine": "dirac-subroutine on G2",
        }
    )
    p = theorem1_subroutine(g2, x, z, d, budget)
    return _rec_witness(step, "dirac-subroutine", p.vertices), step


def _t5_case22(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    comps: list[frozenset[int]],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[Seq, TraceStep]:
    h1 = next(c for c in comps if y in c)
    h2 = frozenset(v for c in comps if c is not h1 for v in c)
    g2, added_xz_g2 = _split_graph(g, x, z, h2)
    _assert_2conn(g2, "split side G2")
    if g2.n >= g.n:
        raise InternalConsistencyError("split side G2 failed to shrink")

    bridge = heaviest_xy_path(g2, x, z, budget, stop_at=d)
    if bridge is not None and bridge[0] >= d:
        # The split side already carries a heavy (x, z)-path; walk on to y
        # inside the other side.
        step = _step("case2.2-heavy-bridge", depth, g, (x, y), d)
        step.notes.update(
            {"z": z, "H1": _sorted_list(h1), "H2": _sorted_list(h2), "added_xz": added_xz_g2}
        )
        head = _rec_witness(step, "oracle-heavy-xz-path", bridge[1].vertices)
        tail = bfs_path(g, z, y, allowed=set(h1) | {z})
        if tail is None:
            raise InternalConsistencyError("cut vertex cannot reach the anchor side")
        return _rec_join(step, head, tail), step

    # Every (x, z)-path in G2 weighs less than d: recursion yields its
    # spanning path, and the anchor side must be all-heavy.
    step = _step("case2.2", depth, g, (x, y), d)
    step.notes.update(
        {"z": z, "H1": _sorted_list(h1), "H2": _sorted_list(h2), "added_xz": added_xz_g2}
    )
    child_seq, child = _t5(g2, x, z, d, depth + 1, limit, budget, check)
    step.children.append(child)
    if len(child_seq) != g2.n:
        raise InternalConsistencyError(
            "recursion returned a non-spanning path although no heavy path exists"
        )
    p2 = child_seq  # spanning (x, z)-path of G2
    if check:
        if all(_meets(g, g.iwdeg(v), d) for v in h2):
            raise InternalConsistencyError(
                "split side has no light vertex despite lacking a heavy path"
            )
        light_h1 = [v for v in h1 if v != y and not _meets(g, g.iwdeg(v), d)]
        if light_h1:
            raise InternalConsistencyError(
                f"anchor side holds light vertices {light_h1} in the spanning branch"
            )

    if len(h2) >= 2:
        return _t5_case221(g, x, y, z, h1, p2, d, depth, limit, budget, check, step)
    return _t5_case222(g, x, y, z, h1, h2, p2, d, depth, budget, step)


def _t5_case221(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    p2: Seq,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[Seq, TraceStep]:
    # Sub-subcase 2.2.1: several vertices opposite the anchor side.  Attach a
    # degree-2 gadget vertex beside the split pair and solve the anchor side.
    step.label = "case2.2.1"
    g1, added_xz_g1 = _split_graph(g, x, z, h1)
    g1p, xp = g1.with_gadget_vertex((x, z))
    _assert_2conn(g1p, "gadget graph G1'")
    if g1p.n >= g.n:
        raise InternalConsistencyError("gadget graph failed to shrink")
    step.notes.update({"gadget_vertex": xp, "added_xz_G1": added_xz_g1})

    sub_seq, sub = _t5(g1p, x, y, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    w = path_weight(g1p, sub_seq)
    if w >= d:
        if xp in sub_seq:
            if sub_seq[:3] != (x, xp, z):
                raise InternalConsistencyError("gadget vertex off the anchor edge in a heavy path")
            return _rec_splice(step, sub_seq, 0, 2, p2), step
        if added_xz_g1 and sub_seq[:2] == (x, z):
            return _rec_splice(step, sub_seq, 0, 1, p2), step
        return _rec_witness(step, "heavy-no-substitution", sub_seq), step
    # Spanning path of the gadget graph must open with the gadget wedge.
    if sub_seq[:3] != (x, xp, z):
        raise InternalConsistencyError("spanning gadget path does not open with the gadget wedge")
    return _rec_splice(step, sub_seq, 0, 2, p2), step


def _t5_case222(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    h2: frozenset[int],
    p2: Seq,
    d: Fraction,
    depth: int,
    budget: Optional[OracleBudget],
    step: TraceStep,
) -> tuple[Seq, TraceStep]:
    # Sub-subcase 2.2.2: a single vertex opposite the anchor side.  It is a
    # degree-2 light neighbor of x; the symmetric claim for y pins the cut
    # vertex down to degree 2, after which the anchor side is all-heavy in
    # the Dirac sense.
    step.label = "case2.2.2"
    (xp,) = h2
    if set(g.neighbors(xp)) != {x, z}:
        raise InternalConsistencyError("singleton split side is not a degree-2 wedge")
    if _meets(g, g.iwdeg(xp), d):
        raise InternalConsistencyError("singleton split vertex is unexpectedly heavy")
    step.notes.update({"x_prime": xp, "y_prime_claim": f"y'={z} with degree 2"})

    if g.has_edge(z, y) and g.degree(z) == 2:
        if len(h1) == 1:
            return _rec_witness(step, "wedge-spanning", (x, xp, z, y)), step
        g1q = g.induced(set(h1) | {x})
        g1q, added_xy = g1q.with_edge_if_absent(x, y, 0, aux=True)
        _assert_2conn(g1q, "anchor-side graph")
        step.notes.update({"added_xy": added_xy, "subroutine": "dirac-subroutine on anchor side"})
        p = theorem1_subroutine(g1q, x, y, d, budget)
        return _rec_witness(step, "dirac-subroutine", p.vertices), step

    # The claimed degree-2 light neighbor of y does not exist on this
    # orientation; fall back to the anchor-swapped run.
    step.notes["y_prime_claim"] = "failed; swapping anchors"
    raise _NeedSwap


# ===================================================================================
# One-anchor construction (heavy or spanning x-path under the triple-max bound)
# ===================================================================================


def find_path_t8(
    g: WeightedGraph,
    x: int,
    d: RationalLike,
    budget: Optional[OracleBudget] = None,
    force: bool = False,
) -> tuple[PathOutcome, TraceStep]:
    """Heavy x-path or spanning x-path under the nonadjacent triple-max bound."""
    df = as_fraction(d)
    g._require_vertex(x)
    if not is_two_connected(g):
        raise GraphError("input graph is not 2-connected")
    check = not force
    if check:
        _require_hyp(g, ConditionKind.TRIPLE_MAX, (x,), df)
    seq, trace = _t8(g, x, df, 0, _max_depth(g.n), budget, check)
    return _classify_single(g, seq, x, None, df), trace


def _t8(
    g: WeightedGraph,
    x: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[Seq, TraceStep]:
    _check_depth(depth, limit)
    if check:
        _require_hyp(g, ConditionKind.TRIPLE_MAX, (x,), d)

    if d <= 0:
        step = _step("threshold<=0", depth, g, (x,), d)
        return _rec_witness(step, "single-vertex", (x,)), step

    if g.n == 3:
        step = _step("base-n3", depth, g, (x,), d)
        a, b = [v for v in g.vertices if v != x]
        cands = [(x, a, b), (x, b, a)]
        cands.sort(key=lambda s: (-path_weight(g, s), s))
        return _rec_witness(step, "base-spanning", cands[0]), step

    h = g.induced(set(g.vertices) - {x})
    if is_two_connected(h):
        step = _step("case1", depth, g, (x,), d)
        xp = _argmax_neighbor(g, x, frozenset())
        wxxp = g.weight(x, xp)
        step.notes.update({"x_prime": xp, "w_xx_prime": str(wxxp)})
        child_seq, child = _t8(h, xp, d - wxxp, depth + 1, limit, budget, check)
        step.children.append(child)
        return _rec_prepend(step, x, child_seq), step

    # Case 2: split at a cut vertex of the remainder; both sides share x and
    # the cut vertex.
    step = _step("case2", depth, g, (x,), d)
    cut = cut_vertices(h)[0]
    comps = components_after_removal(g, {x, cut})
    h1 = comps[0]
    h2 = frozenset(v for c in comps[1:] for v in c)
    g1, added1 = _split_graph(g, x, cut, h1)
    g2, added2 = _split_graph(g, x, cut, h2)
    _assert_2conn(g1, "split side G1")
    _assert_2conn(g2, "split side G2")
    step.notes.update(
        {
            "cut": cut,
            "H1": _sorted_list(h1),
            "H2": _sorted_list(h2),
            "added_x_cut": [added1, added2],
        }
    )

    for side_name, side, gi in (("H1", h1, g1), ("H2", h2, g2)):
        if all(_meets(g, g.iwdeg(v), d) for v in side):
            step.notes["subroutine"] = f"dirac-subroutine on {side_name} side"
            p = theorem1_subroutine(gi, x, cut, d, budget)
            return _rec_witness(step, "dirac-subroutine", p.vertices), step

    # Both sides hold a light vertex, so the pair-max bound holds per side;
    # run the two-anchor construction on each.
    r1, t1 = _t5(g1, x, cut, d, depth + 1, limit, budget, check)
    step.children.append(t1)
    if path_weight(g1, r1) >= d:
        return _rec_witness(step, "side1-heavy", r1), step
    r2, t2 = _t5(g2, x, cut, d, depth + 1, limit, budget, check)
    step.children.append(t2)
    if path_weight(g2, r2) >= d:
        return _rec_witness(step, "side2-heavy", r2), step

    for name, r, gi in (("side1", r1, g1), ("side2", r2, g2)):
        if len(r) != gi.n:
            raise InternalConsistencyError(f"{name} returned a light non-spanning path")
    # Two spanning (x, cut)-paths close into a spanning cycle; dropping one
    # of the two x-edges leaves a spanning x-path.  Keep the heavier option.
    raw_a = r1 + tuple(reversed(r2))[1:-1]
    raw_b = r2 + tuple(reversed(r1))[1:-1]
    ranked = sorted((raw_a, raw_b), key=lambda s: (-path_weight(g, s), s))
    first, second = (r1, r2) if ranked[0] == raw_a else (r2, r1)
    rev = _rec_reverse(step, second)
    trimmed = _rec_drop_tail(step, rev)
    out = _rec_join(step, first, trimmed)
    step.notes["cycle_split"] = "kept the heavier of the two spanning x-paths"
    return out, step


# ===================================================================================
# Disjoint-pair construction (three-way conclusion under the triple-max bound)
# ===================================================================================


def find_paths_t10(
    g: WeightedGraph,
    x: int,
    y: int,
    d: RationalLike,
    budget: Optional[OracleBudget] = None,
    force: bool = False,
) -> tuple[ThreeWayOutcome, TraceStep]:
    """Heavy (x, y)-path, heavy disjoint pair, or spanning disjoint pair.

    Runs under the nonadjacent triple-max bound with both anchors excluded.
    """
    df = as_fraction(d)
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("anchors must be distinct")
    if not is_two_connected(g):
        raise GraphError("input graph is not 2-connected")
    check = not force
    if check:
        _require_hyp(g, ConditionKind.TRIPLE_MAX, (x, y), df)
    kind, payload, trace = _t10(g, x, y, df, 0, _max_depth(g.n), budget, check)
    return _classify_threeway(g, kind, payload, x, y, df), trace


def _classify_threeway(
    g: WeightedGraph, kind: str, payload, x: int, y: int, d: Fraction
) -> ThreeWayOutcome:
    if kind == "single":
        p = make_path(g, payload)
        if p.vertices[0] != x or p.vertices[-1] != y:
            raise InternalConsistencyError(f"single witness misses its anchors: {payload}")
        if p.weight < d:
            raise InternalConsistencyError(f"single witness is light: {p.weight} < {d}")
        return ThreeWayOutcome(HEAVY_XY_PATH, p, None, (x, y))
    s1, s2 = payload
    p1 = make_path(g, s1)
    p2 = make_path(g, s2)
    if p1.vertices[0] != x or p2.vertices[0] != y:
        raise InternalConsistencyError("pair witness misses its anchors")
    if set(s1) & set(s2):
        raise InternalConsistencyError("pair witness is not vertex-disjoint")
    if p1.weight + p2.weight >= d:
        return ThreeWayOutcome(HEAVY_DISJOINT_PAIR, None, (p1, p2), (x, y))
    if len(s1) + len(s2) == g.n:
        return ThreeWayOutcome(SPANNING_DISJOINT_PAIR, None, (p1, p2), (x, y))
    raise InternalConsistencyError("pair witness is neither heavy nor spanning")


_Result = tuple[str, object]  # ("single", seq) | ("pair", (seq_from_x, seq_from_y))


def _t10(
    g: WeightedGraph,
    x: int,
    y: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[str, object, TraceStep]:
    _check_depth(depth, limit)
    try:
        return _t10_body(g, x, y, d, depth, limit, budget, check)
    except _NeedSwap:
        wrapper = _step("swap-anchors", depth, g, (x, y), d)
        wrapper.notes["reason"] = "no degree-2 light neighbor at the second anchor; rerun symmetrically"
        try:
            kind, payload, child = _t10_body(g, y, x, d, depth, limit, budget, check)
        except _NeedSwap:
            raise InternalConsistencyError(
                "degree-2 light neighbor derivation failed in both orientations"
            ) from None
        wrapper.children.append(child)
        if kind == "single":
            return "single", _rec_reverse(wrapper, payload), wrapper
        their_p1, their_p2 = payload
        wrapper.ops.append(
            {"op": "witness", "source": "swap-pair-roles", "out": [list(their_p2), list(their_p1)]}
        )
        return "pair", (their_p2, their_p1), wrapper


def _t10_body(
    g: WeightedGraph,
    x: int,
    y: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[str, object, TraceStep]:
    if check:
        _require_hyp(g, ConditionKind.TRIPLE_MAX, (x, y), d)

    if d <= 0:
        step = _step("threshold<=0", depth, g, (x, y), d)
        seq = bfs_path(g, x, y)
        if seq is None:
            raise InternalConsistencyError("anchors are disconnected in a 2-connected graph")
        return "single", _rec_witness(step, "shortest-path", seq), step

    if g.n == 3:
        step = _step("base-n3", depth, g, (x, y), d)
        (z3,) = [v for v in g.vertices if v not in (x, y)]
        cands = [(x, z3, y)]
        if g.has_edge(x, y):
            cands.append((x, y))
        heavy = [s for s in cands if path_weight(g, s) >= d]
        if heavy:
            heavy.sort(key=lambda s: (-path_weight(g, s), s))
            return "single", _rec_witness(step, "base-heavy", heavy[0]), step
        p1 = _rec_witness(step, "base-pair", (x, z3))
        p2 = _rec_witness(step, "base-pair", (y,))
        return "pair", (p1, p2), step

    h = g.induced(set(g.vertices) - {x})
    if is_two_connected(h):
        # Case 1: peel the first anchor and lift whichever conclusion shape
        # the recursion produced.
        step = _step("case1", depth, g, (x, y), d)
        xp = _argmax_neighbor(g, x, frozenset((y,)))
        wxxp = g.weight(x, xp)
        step.notes.update({"x_prime": xp, "w_xx_prime": str(wxxp)})
        kind, payload, child = _t10(h, xp, y, d - wxxp, depth + 1, limit, budget, check)
        step.children.append(child)
        if kind == "single":
            return "single", _rec_prepend(step, x, payload), step
        p1, p2 = payload
        return "pair", (_rec_prepend(step, x, p1), p2), step

    cuts = cut_vertices(h)
    z = cuts[0]
    comps = components_after_removal(g, {x, z})
    if y == z:
        return _t10_case21(g, x, y, comps, d, depth, limit, budget, check)
    return _t10_case22(g, x, y, z, comps, d, depth, limit, budget, check)


def _t10_case21(
    g: WeightedGraph,
    x: int,
    y: int,
    comps: list[frozenset[int]],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[str, object, TraceStep]:
    # Subcase 2.1 (second anchor is the cut vertex).  An all-heavy side gives
    # the Dirac-type path; otherwise both sides run the two-anchor
    # construction and either give a heavy path or close into a spanning
    # cycle, which splits into a spanning pair.
    step = _step("case2.1", depth, g, (x, y), d)
    h1 = comps[0]
    h2 = frozenset(v for c in comps[1:] for v in c)
    g1, added1 = _split_graph(g, x, y, h1)
    g2, added2 = _split_graph(g, x, y, h2)
    _assert_2conn(g1, "split side G1")
    _assert_2conn(g2, "split side G2")
    step.notes.update(
        {"z": y, "H1": _sorted_list(h1), "H2": _sorted_list(h2), "added_xy": [added1, added2]}
    )

    for side_name, side, gi in (("H1", h1, g1), ("H2", h2, g2)):
        if all(_meets(g, g.iwdeg(v), d) for v in side):
            step.notes["subroutine"] = f"dirac-subroutine on {side_name} side"
            p = theorem1_subroutine(gi, x, y, d, budget)
            return "single", _rec_witness(step, "dirac-subroutine", p.vertices), step

    r1, t1 = _t5(g1, x, y, d, depth + 1, limit, budget, check)
    step.children.append(t1)
    if path_weight(g1, r1) >= d:
        return "single", _rec_witness(step, "side1-heavy", r1), step
    r2, t2 = _t5(g2, x, y, d, depth + 1, limit, budget, check)
    step.children.append(t2)
    if path_weight(g2, r2) >= d:
        return "single", _rec_witness(step, "side2-heavy", r2), step

    for name, r, gi in (("side1", r1, g1), ("side2", r2, g2)):
        if len(r) != gi.n:
            raise InternalConsistencyError(f"{name} returned a light non-spanning path")
    p1 = _rec_drop_tail(step, r1)                    # x ... pred(y) in side 1
    rev = _rec_reverse(step, r2)                     # y ... x in side 2
    p2 = _rec_drop_tail(step, rev)                   # y ... succ(x)
    step.notes["cycle_split"] = "spanning cycle split at both anchor edges of side 2 / side 1"
    return "pair", (p1, p2), step


def _t10_case22(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    comps: list[frozenset[int]],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
) -> tuple[str, object, TraceStep]:
    h1 = next(c for c in comps if y in c)
    h2 = frozenset(v for c in comps if c is not h1 for v in c)
    g2, added_xz_g2 = _split_graph(g, x, z, h2)
    _assert_2conn(g2, "split side G2")
    if g2.n >= g.n:
        raise InternalConsistencyError("split side G2 failed to shrink")

    bridge = heaviest_xy_path(g2, x, z, budget, stop_at=d)
    if bridge is not None and bridge[0] >= d:
        step = _step("case2.2-heavy-bridge", depth, g, (x, y), d)
        step.notes.update(
            {"z": z, "H1": _sorted_list(h1), "H2": _sorted_list(h2), "added_xz": added_xz_g2}
        )
        head = _rec_witness(step, "oracle-heavy-xz-path", bridge[1].vertices)
        tail = bfs_path(g, z, y, allowed=set(h1) | {z})
        if tail is None:
            raise InternalConsistencyError("cut vertex cannot reach the anchor side")
        return "single", _rec_join(step, head, tail), step

    # Standing assumption from here on: every (x, z)-path in G2 weighs < d.
    step = _step("case2.2", depth, g, (x, y), d)
    step.notes.update(
        {"z": z, "H1": _sorted_list(h1), "H2": _sorted_list(h2), "added_xz": added_xz_g2}
    )
    kind, payload, child = _t10(g2, x, z, d, depth + 1, limit, budget, check)
    step.children.append(child)
    if kind == "single":
        raise InternalConsistencyError(
            "recursion produced a heavy path although the search found none"
        )
    p21, p22 = payload  # x-path and z-path in G2, vertex-disjoint
    csum = path_weight(g2, p21) + path_weight(g2, p22)
    if csum >= d:
        step.label = "case2.2-heavy-pair"
        tail = bfs_path(g, y, z, allowed=set(h1) | {z})
        if tail is None:
            raise InternalConsistencyError("cut vertex cannot reach the anchor side")
        p2 = _rec_join(step, tail, p22)
        return "pair", (p21, p2), step

    if set(p21) | set(p22) != set(g2.vertices):
        raise InternalConsistencyError("light pair from recursion fails to span the split side")
    if check and all(_meets(g, g.iwdeg(v), d) for v in h2):
        raise InternalConsistencyError(
            "split side has no light vertex despite lacking a heavy path"
        )

    if all(_meets(g, g.iwdeg(v), d) for v in h1 if v != y):
        return _t10_case221(
            g, x, y, z, h1, (p21, p22), d, depth, limit, budget, check, step
        )
    return _t10_case222(
        g, g2, x, y, z, h1, h2, (p21, p22), d, depth, limit, budget, check, step
    )


def _t10_case221(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    span_pair: tuple[Seq, Seq],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # Sub-subcase 2.2.1: the anchor side is all-heavy off y.  The two-anchor
    # construction on the gadget side either yields a heavy path (lift by
    # replacing gadget pieces with a real path across the split side) or a
    # spanning path whose gadget wedge is replaced by the split side's
    # spanning pair.
    step.label = "case2.2.1"
    p21, p22 = span_pair
    g1, added_xz_g1 = _split_graph(g, x, z, h1)
    g1p, xp = g1.with_gadget_vertex((x, z))
    _assert_2conn(g1p, "gadget graph G1'")
    step.notes.update({"gadget_vertex": xp, "added_xz_G1": added_xz_g1})

    sub_seq, sub = _t5(g1p, x, y, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    w = path_weight(g1p, sub_seq)
    if w >= d:
        if xp in sub_seq:
            if sub_seq[:3] != (x, xp, z):
                raise InternalConsistencyError("gadget vertex off the anchor edge in a heavy path")
            repl = _real_xz_replacement(g, x, z, h1)
            return "single", _rec_splice(step, sub_seq, 0, 2, repl), step
        if added_xz_g1 and sub_seq[:2] == (x, z):
            repl = _real_xz_replacement(g, x, z, h1)
            return "single", _rec_splice(step, sub_seq, 0, 1, repl), step
        return "single", _rec_witness(step, "heavy-no-substitution", sub_seq), step
    if sub_seq[:3] != (x, xp, z):
        raise InternalConsistencyError("spanning gadget path does not open with the gadget wedge")
    p_tail = _rec_drop_head(step, _rec_drop_head(step, sub_seq))  # [z ... y]
    p2 = _rec_join(step, _rec_reverse(step, p_tail), p22)         # [y ... z] + split tail
    return "pair", (p21, p2), step


def _real_xz_replacement(g: WeightedGraph, x: int, z: int, h1: frozenset[int]) -> Seq:
    """A real (x, z)-path through the non-anchor side (never the added edge)."""
    allowed = (set(g.vertices) - set(h1) - {x, z}) | {x, z}
    host = g.induced(allowed)
    if host.has_edge(x, z) and host.is_aux_edge(x, z):
        host = host.without_edge(x, z)
    seq = bfs_path(host, x, z)
    if seq is None:
        raise InternalConsistencyError("no real replacement path across the split side")
    return seq


def _t10_case222(
    g: WeightedGraph,
    g2: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    h2: frozenset[int],
    span_pair: tuple[Seq, Seq],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # Sub-subcase 2.2.2: the anchor side holds a light vertex too, so the
    # pair-max bound holds separately on each side of the cut.  The split
    # side then carries a spanning (x, z)-path from the two-anchor
    # construction.
    step.label = "case2.2.2"
    r5, sub = _t5(g2, x, z, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    if len(r5) != g2.n or path_weight(g2, r5) >= d:
        raise InternalConsistencyError(
            "two-anchor construction should have produced a light spanning path"
        )
    p2h = r5  # spanning (x, z)-path of the split side

    if len(h2) >= 2:
        return _t10_case222_many(
            g, x, y, z, h1, p2h, d, depth, limit, budget, check, step
        )
    return _t10_case222_single(
        g, x, y, z, h1, h2, p2h, d, depth, limit, budget, check, step
    )


def _t10_case222_many(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    p2h: Seq,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # Several vertices opposite the anchor side: recurse on the gadget graph
    # and lift each of the three conclusion shapes across the gadget wedge.
    step.label = "case2.2.2-many"
    g1, added_xz_g1 = _split_graph(g, x, z, h1)
    g1p, xp = g1.with_gadget_vertex((x, z))
    _assert_2conn(g1p, "gadget graph G1'")
    if g1p.n >= g.n:
        raise InternalConsistencyError("gadget graph failed to shrink")
    step.notes.update({"gadget_vertex": xp, "added_xz_G1": added_xz_g1})

    kind, payload, child = _t10(g1p, x, y, d, depth + 1, limit, budget, check)
    step.children.append(child)

    if kind == "single":
        seq = payload
        if xp in seq:
            if seq[:3] != (x, xp, z):
                raise InternalConsistencyError("gadget vertex off the anchor edge in a heavy path")
            repl = _real_xz_replacement(g, x, z, h1)
            return "single", _rec_splice(step, seq, 0, 2, repl), step
        if added_xz_g1 and seq[:2] == (x, z):
            repl = _real_xz_replacement(g, x, z, h1)
            return "single", _rec_splice(step, seq, 0, 1, repl), step
        return "single", _rec_witness(step, "heavy-no-substitution", seq), step

    q1, q2 = payload
    heavy = path_weight(g1p, q1) + path_weight(g1p, q2) >= d

    if heavy:
        # Strip gadget pieces; replacements only remove weight-0 edges or add
        # real ones, so the weight sum stays at or above d.
        if xp in q1:
            if q1[:3] == (x, xp, z):
                repl = _real_xz_replacement(g, x, z, h1)
                q1 = _rec_splice(step, q1, 0, 2, repl)
            elif q1 == (x, z, xp):
                repl = _real_xz_replacement(g, x, z, h1)
                q1 = _rec_witness(step, "replace-wedge-detour", repl)
            elif q1[-2:] == (z, xp):
                q1 = _rec_drop_tail(step, q1)
            elif q1 == (x, xp):
                q1 = _rec_drop_tail(step, q1)
            else:
                raise InternalConsistencyError(f"unexpected gadget position in x-path {q1}")
        elif added_xz_g1 and q1[:2] == (x, z):
            repl = _real_xz_replacement(g, x, z, h1)
            q1 = _rec_splice(step, q1, 0, 1, repl)
        if xp in q2:
            if q2[-2:] != (z, xp):
                raise InternalConsistencyError(f"unexpected gadget position in y-path {q2}")
            q2 = _rec_drop_tail(step, q2)
        return "pair", (q1, q2), step

    # Spanning pair of the gadget graph: the gadget wedge absorbs the split
    # side's spanning path so the lifted pair covers everything.
    if set(q1) | set(q2) != set(g1p.vertices):
        raise InternalConsistencyError("light pair from gadget recursion fails to span")
    if xp in q1:
        if q1[:3] == (x, xp, z):
            return "pair", (_rec_splice(step, q1, 0, 2, p2h), q2), step
        if q1 == (x, z, xp):
            return "pair", (_rec_witness(step, "replace-wedge-detour", p2h), q2), step
        if q1 == (x, xp):
            if z not in q2:
                raise InternalConsistencyError("cut vertex uncovered by the spanning pair")
            return "pair", (_rec_drop_tail(step, p2h), q2), step
        if q1[-2:] == (z, xp):
            trimmed = _rec_drop_tail(step, q1)           # ... z
            tail = _rec_drop_head(step, p2h)             # drop x: [v1 ... z]
            rev_tail = _rec_reverse(step, tail)          # [z ... v1]
            return "pair", (_rec_join(step, trimmed, rev_tail), q2), step
        raise InternalConsistencyError(f"unexpected gadget position in spanning x-path {q1}")
    if xp in q2:
        if q2[-2:] != (z, xp):
            raise InternalConsistencyError(f"unexpected gadget position in spanning y-path {q2}")
        trimmed = _rec_drop_tail(step, q2)
        tail = _rec_drop_head(step, p2h)
        rev_tail = _rec_reverse(step, tail)
        return "pair", (q1, _rec_join(step, trimmed, rev_tail)), step
    raise InternalConsistencyError("spanning pair of the gadget graph misses the gadget vertex")


def _t10_case222_single(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    h1: frozenset[int],
    h2: frozenset[int],
    p2h: Seq,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # A single degree-2 light vertex opposite the anchor side.  The symmetric
    # derivation yields a degree-2 light neighbor of y; branch on where it
    # sits relative to the cut vertex.
    step.label = "case2.2.2-single"
    (xp,) = h2
    if set(g.neighbors(xp)) != {x, z}:
        raise InternalConsistencyError("singleton split side is not a degree-2 wedge")
    if _meets(g, g.iwdeg(xp), d):
        raise InternalConsistencyError("singleton split vertex is unexpectedly heavy")
    step.notes["x_prime"] = xp

    cands = [
        v
        for v in g.neighbors(y)
        if v != x and g.degree(v) == 2 and not _meets(g, g.iwdeg(v), d)
    ]
    if not cands:
        step.notes["y_prime_claim"] = "failed; swapping anchors"
        raise _NeedSwap
    yp = cands[0]
    step.notes["y_prime"] = yp

    if yp == z:
        return _t10_single_ypz(g, x, y, z, xp, h1, d, depth, limit, budget, check, step)

    (ypp,) = [v for v in g.neighbors(yp) if v != y]
    step.notes["y_prime_prime"] = ypp
    if check:
        bad = [
            v
            for v in g.vertices
            if v not in (x, y, xp, z, yp, ypp) and not _meets(g, g.iwdeg(v), d)
        ]
        if bad:
            raise InternalConsistencyError(
                f"vertices {bad} are light outside the excused set"
            )
    if ypp == z:
        return _t10_single_yppz(g, x, y, z, xp, yp, d, depth, limit, budget, check, step)
    return _t10_single_far(g, x, y, z, xp, yp, ypp, h1, d, depth, limit, budget, check, step)


def _t10_single_ypz(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    xp: int,
    h1: frozenset[int],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # The light neighbor of y is the cut vertex itself (degree 2, wedged
    # between the split vertex and y).
    step.label = "case2.2.2-single-y'=z"
    if len(h1) == 1:
        p1 = _rec_witness(step, "wedge", (x, xp, z))
        p2 = _rec_witness(step, "wedge", (y,))
        return "pair", (p1, p2), step
    g1q, added_xy = g.induced(set(h1) | {x}).with_edge_if_absent(x, y, 0, aux=True)
    _assert_2conn(g1q, "anchor-side graph")
    step.notes["added_xy"] = added_xy
    r, sub = _t5(g1q, x, y, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    if path_weight(g1q, r) >= d:
        return "single", _rec_witness(step, "anchor-side-heavy", r), step
    if len(r) != g1q.n:
        raise InternalConsistencyError("anchor side returned a light non-spanning path")
    p1 = _rec_witness(step, "wedge", (x, xp, z))
    p2 = _rec_reverse(step, _rec_drop_head(step, r))
    return "pair", (p1, p2), step


def _t10_single_yppz(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    xp: int,
    yp: int,
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # The light neighbor of y hangs off the cut vertex: joining it to the
    # split vertex with a zero-weight edge restores the pair-max bound on the
    # whole graph, and the two-anchor construction finishes.
    step.label = "case2.2.2-single-y''=z"
    gq = g.with_edge(xp, yp, 0, aux=True)
    r, sub = _t5(gq, x, y, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    w = path_weight(gq, r)
    if not _has_consecutive(r, xp, yp):
        if w >= d:
            return "single", _rec_witness(step, "no-substitution", r), step
        if len(r) != gq.n:
            raise InternalConsistencyError("light path from the joined graph fails to span")
        # Spanning path of g itself: split at the first edge.
        step.notes["split_edge"] = [r[0], r[1]]
        p1 = _rec_witness(step, "first-edge-split", (x,))
        p2 = _rec_reverse(step, _rec_drop_head(step, r))
        return "pair", (p1, p2), step
    pieces = _rec_delete_edges(step, r, [(xp, yp)])
    if len(pieces) != 2:
        raise InternalConsistencyError("deleting one edge must leave two pieces")
    a, b = pieces
    if x in b:
        a, b = b, a
    if a[0] != x:
        a = _rec_reverse(step, a)
    if b[0] != y:
        b = _rec_reverse(step, b)
    return "pair", (a, b), step


def _t10_single_far(
    g: WeightedGraph,
    x: int,
    y: int,
    z: int,
    xp: int,
    yp: int,
    ypp: int,
    h1: frozenset[int],
    d: Fraction,
    depth: int,
    limit: int,
    budget: Optional[OracleBudget],
    check: bool,
    step: TraceStep,
) -> tuple[str, object, TraceStep]:
    # The light neighbor of y sits inside the anchor side, two steps from the
    # cut vertex.  Tie both of its sides to the cut vertex with zero-weight
    # edges, solve the anchor side, and undo whichever added edges the
    # witness used.
    step.label = "case2.2.2-single-y''!=z"
    g1, added_xz_g1 = _split_graph(g, x, z, h1)
    g1q = g1.with_edge(z, yp, 0, aux=True)
    g1q, added_zypp = g1q.with_edge_if_absent(z, ypp, 0, aux=True)
    _assert_2conn(g1q, "anchor-side graph with tie edges")
    step.notes.update({"added_xz_G1": added_xz_g1, "added_zy_prime_prime": added_zypp})

    marked: list[tuple[int, int]] = [(z, yp)]
    if added_xz_g1:
        marked.append((x, z))
    if added_zypp:
        marked.append((z, ypp))

    r, sub = _t5(g1q, x, y, d, depth + 1, limit, budget, check)
    step.children.append(sub)
    w = path_weight(g1q, r)
    present = [e for e in marked if _has_consecutive(r, *e)]

    if w >= d:
        if not present:
            return "single", _rec_witness(step, "no-substitution", r), step
        pieces = _rec_delete_edges(step, r, present)
        pieces = [p for p in pieces if p != (z,)]
        if len(pieces) != 2:
            raise InternalConsistencyError("marked-edge deletion left an unexpected shape")
        a, b = pieces
        if x in b:
            a, b = b, a
        if a[0] != x:
            a = _rec_reverse(step, a)
        if b[0] != y:
            b = _rec_reverse(step, b)
        return "pair", (a, b), step

    if len(r) != g1q.n:
        raise InternalConsistencyError("light path from the tied graph fails to span")

    xz_used = added_xz_g1 and ((x, z) in present)
    zy_used = [e for e in present if e != (x, z)]

    if not zy_used:
        # Possibly only the added xz edge: drop x (taking that edge with it).
        p1 = _rec_witness(step, "wedge", (x, xp))
        p2 = _rec_reverse(step, _rec_drop_head(step, r))
        return "pair", (p1, p2), step

    if xz_used and len(zy_used) == 1:
        if r[:2] != (x, z):
            raise InternalConsistencyError("added anchor edge must sit at the path head")
        p1 = _rec_witness(step, "wedge", (x, xp, z))
        p2 = _rec_reverse(step, _rec_drop_head(step, _rec_drop_head(step, r)))
        return "pair", (p1, p2), step

    if len(zy_used) == 1:
        pieces = _rec_delete_edges(step, r, zy_used)
        a, b = pieces
        za, zb = (z in a), (z in b)
        if za == zb:
            raise InternalConsistencyError("cut vertex must end exactly one piece")
        if za:
            if a[-1] != z:
                a = _rec_reverse(step, a)
                if a[-1] != z:
                    raise InternalConsistencyError("cut vertex is not a piece end")
            a = _rec_append(step, a, xp)
        else:
            if b[-1] != z:
                b = _rec_reverse(step, b)
                if b[-1] != z:
                    raise InternalConsistencyError("cut vertex is not a piece end")
            b = _rec_append(step, b, xp)
        if x in b:
            a, b = b, a
        if a[0] != x:
            a = _rec_reverse(step, a)
        if b[0] != y:
            b = _rec_reverse(step, b)
        return "pair", (a, b), step

    # Both tie edges used: the path is forced to end (..., y'', z, y', y);
    # shortcut across the real y''-y' edge, then wedge off the cut vertex.
    if r[-4:] != (ypp, z, yp, y):
        raise InternalConsistencyError(f"unexpected tail with both tie edges used: {r[-5:]}")
    shortcut = _rec_splice(step, r, len(r) - 4, len(r) - 2, (ypp, yp))
    p1 = _rec_witness(step, "wedge", (x, xp, z))
    p2 = _rec_reverse(step, _rec_drop_head(step, shortcut))
    return "pair", (p1, p2), step

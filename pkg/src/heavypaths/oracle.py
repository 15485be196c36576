"""Exact exhaustive searches over paths, cycles, and disjoint path pairs.

Every search is a depth-first enumeration with an admissible upper bound
(current weight plus the sum of the largest k remaining edge weights can
never be beaten) so pruning cannot change any optimum.  Neighbor lists are
scanned in ascending id order and incumbents only replaced on strict
improvement, which makes every reported witness the lexicographically
smallest among the optima.

All arithmetic is integer at the graph's scale; results are converted back
to exact fractions at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceededError, GraphError
from .graph import Path, WeightedGraph, make_path


@dataclass(frozen=True)
class OracleBudget:
    """Caps on an exact search; exceeding one aborts rather than answer wrongly."""

    max_vertices: int = 12
    node_limit: Optional[int] = None


DEFAULT_BUDGET = OracleBudget()


class _Nodes:
    """Search-tree node counter shared across nested enumerations."""

    __slots__ = ("count", "limit")

    def __init__(self, limit: Optional[int]):
        self.count = 0
        self.limit = limit

    def tick(self) -> None:
        self.count += 1
        if self.limit is not None and self.count > self.limit:
            raise BudgetExceededError(f"search exceeded node limit {self.limit}")


def _check_budget(g: WeightedGraph, budget: Optional[OracleBudget]) -> tuple[OracleBudget, _Nodes]:
    b = budget or DEFAULT_BUDGET
    if g.n > b.max_vertices:
        raise BudgetExceededError(
            f"graph has {g.n} vertices, over the budget cap {b.max_vertices}"
        )
    return b, _Nodes(b.node_limit)


def _as_result(g: WeightedGraph, iw: int, seq: tuple[int, ...]) -> tuple[Fraction, Path]:
    w = Fraction(iw, g.scale)
    return w, Path(seq, w)


# -- heaviest paths ------------------------------------------------------------


def heaviest_xy_path(
    g: WeightedGraph,
    x: int,
    y: int,
    budget: Optional[OracleBudget] = None,
    stop_at: Optional[Fraction] = None,
) -> Optional[tuple[Fraction, Path]]:
    """Exact maximum-weight simple (x, y)-path, or None when none exists.

    With `stop_at`, returns as soon as any path of weight >= stop_at is found
    (that path is the witness; the reported weight is then a lower bound on
    the true maximum but still exact for the witness).
    """
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("heaviest_xy_path needs two distinct endpoints")
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    prefix = g.weights_desc_prefix()
    pmax = len(prefix) - 1
    istop = None if stop_at is None else stop_at * g.scale
    n = g.n

    best_w = -1
    best_seq: Optional[tuple[int, ...]] = None
    seq: list[int] = [x]
    visited = {x}

    def rec(u: int, w: int) -> bool:
        nonlocal best_w, best_seq
        nodes.tick()
        if u == y:
            if w > best_w:
                best_w = w
                best_seq = tuple(seq)
                if istop is not None and best_w >= istop:
                    return True
            return False
        room = n - len(seq)
        if w + prefix[room if room < pmax else pmax] <= best_w:
            return False
        for v, iw in adj[u].items():
            if v not in visited:
                visited.add(v)
                seq.append(v)
                done = rec(v, w + iw)
                seq.pop()
                visited.remove(v)
                if done:
                    return True
        return False

    rec(x, 0)
    if best_seq is None:
        return None
    return _as_result(g, best_w, best_seq)


def heaviest_x_path(
    g: WeightedGraph,
    x: int,
    budget: Optional[OracleBudget] = None,
    stop_at: Optional[Fraction] = None,
) -> tuple[Fraction, Path]:
    """Exact maximum-weight simple path starting at x (single vertex allowed)."""
    g._require_vertex(x)
    _, nodes = _check_budget(g, budget)
    res = _heaviest_from(g, x, nodes, stop_at, incumbent=-1)
    assert res is not None
    return res


def _heaviest_from(
    g: WeightedGraph,
    x: int,
    nodes: _Nodes,
    stop_at: Optional[Fraction],
    incumbent: int,
) -> Optional[tuple[Fraction, Path]]:
    """Best x-start path strictly heavier than `incumbent` (integer scale)."""
    adj = g.iadj()
    prefix = g.weights_desc_prefix()
    pmax = len(prefix) - 1
    istop = None if stop_at is None else stop_at * g.scale
    n = g.n
    seq: list[int] = [x]
    visited = {x}
    best_w = incumbent
    best_seq: Optional[tuple[int, ...]] = None

    def rec(u: int, w: int) -> bool:
        nonlocal best_w, best_seq
        nodes.tick()
        if w > best_w:
            best_w = w
            best_seq = tuple(seq)
            if istop is not None and best_w >= istop:
                return True
        room = n - len(seq)
        if w + prefix[room if room < pmax else pmax] <= best_w:
            return False
        for v, iw in adj[u].items():
            if v not in visited:
                visited.add(v)
                seq.append(v)
                done = rec(v, w + iw)
                seq.pop()
                visited.remove(v)
                if done:
                    return True
        return False

    rec(x, 0)
    if best_seq is None:
        return None
    return _as_result(g, best_w, best_seq)


def heaviest_path(
    g: WeightedGraph,
    budget: Optional[OracleBudget] = None,
    stop_at: Optional[Fraction] = None,
) -> tuple[Fraction, Path]:
    """Exact maximum-weight simple path anywhere in g."""
    if g.n == 0:
        raise GraphError("graph has no vertices")
    _, nodes = _check_budget(g, budget)
    best: Optional[tuple[Fraction, Path]] = None
    best_iw = -1
    for s in g.vertices:
        res = _heaviest_from(g, s, nodes, stop_at, incumbent=best_iw)
        if res is not None:
            best = res
            best_iw = int(res[0] * g.scale)
            if stop_at is not None and res[0] >= stop_at:
                break
    assert best is not None
    return best


def heaviest_cycle(
    g: WeightedGraph,
    budget: Optional[OracleBudget] = None,
    stop_at: Optional[Fraction] = None,
) -> Optional[tuple[Fraction, Path]]:
    """Exact maximum-weight simple cycle, or None for an acyclic graph.

    The witness lists the cycle's vertices once, starting at its smallest
    vertex; the closing edge back to the start is implied.
    """
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    prefix = g.weights_desc_prefix()
    pmax = len(prefix) - 1
    istop = None if stop_at is None else stop_at * g.scale
    n = g.n

    best_w = -1
    best_seq: Optional[tuple[int, ...]] = None

    for s in g.vertices:
        seq: list[int] = [s]
        visited = {s}

        def rec(u: int, w: int) -> bool:
            nonlocal best_w, best_seq
            nodes.tick()
            back = adj[u].get(s)
            if back is not None and len(seq) >= 3 and seq[1] < seq[-1]:
                total = w + back
                if total > best_w:
                    best_w = total
                    best_seq = tuple(seq)
                    if istop is not None and best_w >= istop:
                        return True
            room = n - len(seq) + 1  # +1 for the closing edge
            if w + prefix[room if room < pmax else pmax] <= best_w:
                return False
            for v, iw in adj[u].items():
                if v > s and v not in visited:
                    visited.add(v)
                    seq.append(v)
                    done = rec(v, w + iw)
                    seq.pop()
                    visited.remove(v)
                    if done:
                        return True
            return False

        if rec(s, 0):
            break
    if best_seq is None:
        return None
    w = Fraction(best_w, g.scale)
    return w, Path(best_seq, w)


def heaviest_cycles_all_spanning(
    g: WeightedGraph, budget: Optional[OracleBudget] = None
) -> bool:
    """True iff every maximum-weight cycle visits all vertices.

    Vacuously true for an acyclic graph.  Enumerates the full tie set at the
    maximum weight, so pruning is strict-only.
    """
    top = heaviest_cycle(g, budget)
    if top is None:
        return True
    target = int(top[0] * g.scale)
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    prefix = g.weights_desc_prefix()
    pmax = len(prefix) - 1
    n = g.n

    for s in g.vertices:
        seq: list[int] = [s]
        visited = {s}

        def rec(u: int, w: int) -> bool:
            nodes.tick()
            back = adj[u].get(s)
            if (
                back is not None
                and len(seq) >= 3
                and seq[1] < seq[-1]
                and w + back == target
                and len(seq) < n
            ):
                return True  # non-spanning cycle ties the maximum
            room = n - len(seq) + 1
            if w + prefix[room if room < pmax else pmax] < target:
                return False
            for v, iw in adj[u].items():
                if v > s and v not in visited:
                    visited.add(v)
                    seq.append(v)
                    found = rec(v, w + iw)
                    seq.pop()
                    visited.remove(v)
                    if found:
                        return True
            return False

        if rec(s, 0):
            return False
    return True


# -- Hamilton paths and cycles --------------------------------------------------


def _residual_connected_through(
    adj: dict[int, dict[int, int]], u: int, visited: set[int], n: int
) -> bool:
    """True iff every unvisited vertex is reachable from u avoiding visited ones."""
    target = n - len(visited)
    if target == 0:
        return True
    seen = {u}
    stack = [u]
    reached = 0
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in visited and b not in seen:
                seen.add(b)
                reached += 1
                stack.append(b)
    return reached == target


def hamilton_xy_path(
    g: WeightedGraph, x: int, y: int, budget: Optional[OracleBudget] = None
) -> Optional[Path]:
    """A spanning (x, y)-path, or a definitive None."""
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("hamilton_xy_path needs two distinct endpoints")
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    n = g.n
    seq: list[int] = [x]
    visited = {x}

    def rec(u: int) -> bool:
        nodes.tick()
        if len(seq) == n:
            return u == y
        if not _residual_connected_through(adj, u, visited, n):
            return False
        for v in adj[u]:
            if v not in visited:
                if v == y and len(seq) != n - 1:
                    continue
                visited.add(v)
                seq.append(v)
                if rec(v):
                    return True
                seq.pop()
                visited.remove(v)
        return False

    if rec(x):
        return make_path(g, tuple(seq))
    return None


def hamilton_x_path(
    g: WeightedGraph, x: int, budget: Optional[OracleBudget] = None
) -> Optional[Path]:
    """A spanning path starting at x, or a definitive None."""
    g._require_vertex(x)
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    n = g.n
    if n == 1:
        return make_path(g, (x,))
    seq: list[int] = [x]
    visited = {x}

    def rec(u: int) -> bool:
        nodes.tick()
        if len(seq) == n:
            return True
        if not _residual_connected_through(adj, u, visited, n):
            return False
        for v in adj[u]:
            if v not in visited:
                visited.add(v)
                seq.append(v)
                if rec(v):
                    return True
                seq.pop()
                visited.remove(v)
        return False

    if rec(x):
        return make_path(g, tuple(seq))
    return None


def hamilton_path(
    g: WeightedGraph, budget: Optional[OracleBudget] = None
) -> Optional[Path]:
    """A spanning path with free endpoints, or a definitive None."""
    for s in g.vertices:
        p = hamilton_x_path(g, s, budget)
        if p is not None:
            return p
    return None


def hamilton_cycle(
    g: WeightedGraph, budget: Optional[OracleBudget] = None
) -> Optional[Path]:
    """A spanning cycle (vertices listed once, closing edge implied), or None."""
    _, nodes = _check_budget(g, budget)
    n = g.n
    if n < 3:
        return None
    adj = g.iadj()
    s = g.vertices[0]
    seq: list[int] = [s]
    visited = {s}

    def rec(u: int) -> bool:
        nodes.tick()
        if len(seq) == n:
            return s in adj[u] and seq[1] < seq[-1]
        if not _residual_connected_through(adj, u, visited, n):
            return False
        for v in adj[u]:
            if v not in visited:
                visited.add(v)
                seq.append(v)
                if rec(v):
                    return True
                seq.pop()
                visited.remove(v)
        return False

    if rec(s):
        cyc = tuple(seq)
        w = Fraction(sum(g.iweight(a, b) for a, b in zip(cyc, cyc[1:])) + g.iweight(cyc[-1], s), g.scale)
        return Path(cyc, w)
    return None


# -- disjoint pairs --------------------------------------------------------------


def best_disjoint_pair(
    g: WeightedGraph,
    x: int,
    y: int,
    budget: Optional[OracleBudget] = None,
    stop_at: Optional[Fraction] = None,
) -> tuple[Fraction, Path, Path]:
    """Exact maximum of w(P1)+w(P2) over vertex-disjoint (x-path, y-path) pairs.

    Single-vertex paths are allowed, so the pair ([x], [y]) is always feasible.
    """
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("best_disjoint_pair needs two distinct anchors")
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    prefix = g.weights_desc_prefix()
    pmax = len(prefix) - 1
    istop = None if stop_at is None else stop_at * g.scale
    n = g.n

    best_w = -1
    best_pair: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    p1: list[int] = [x]
    p2: list[int] = [y]
    used = {x, y}

    def rec2(u: int, w: int) -> bool:
        nonlocal best_w, best_pair
        nodes.tick()
        if w > best_w:
            best_w = w
            best_pair = (tuple(p1), tuple(p2))
            if istop is not None and best_w >= istop:
                return True
        room = n - len(used)
        if w + prefix[room if room < pmax else pmax] <= best_w:
            return False
        for v, iw in adj[u].items():
            if v not in used:
                used.add(v)
                p2.append(v)
                done = rec2(v, w + iw)
                p2.pop()
                used.remove(v)
                if done:
                    return True
        return False

    def rec1(u: int, w: int) -> bool:
        nodes.tick()
        if rec2(y, w):
            return True
        room = n - len(used)
        if w + prefix[room if room < pmax else pmax] <= best_w:
            return False
        for v, iw in adj[u].items():
            if v not in used:
                used.add(v)
                p1.append(v)
                done = rec1(v, w + iw)
                p1.pop()
                used.remove(v)
                if done:
                    return True
        return False

    rec1(x, 0)
    assert best_pair is not None
    w = Fraction(best_w, g.scale)
    s1, s2 = best_pair
    return w, make_path(g, s1), make_path(g, s2)


def spanning_disjoint_pair(
    g: WeightedGraph, x: int, y: int, budget: Optional[OracleBudget] = None
) -> Optional[tuple[Path, Path]]:
    """A vertex-disjoint (x-path, y-path) pair covering all of V, or None."""
    g._require_vertex(x)
    g._require_vertex(y)
    if x == y:
        raise GraphError("spanning_disjoint_pair needs two distinct anchors")
    _, nodes = _check_budget(g, budget)
    adj = g.iadj()
    n = g.n
    p1: list[int] = [x]
    p2: list[int] = [y]
    used = {x, y}

    def rec2(u: int) -> bool:
        nodes.tick()
        if len(used) == n:
            return True
        for v in adj[u]:
            if v not in used:
                used.add(v)
                p2.append(v)
                if rec2(v):
                    return True
                p2.pop()
                used.remove(v)
        return False

    def rec1(u: int) -> bool:
        nodes.tick()
        if rec2(y):
            return True
        for v in adj[u]:
            if v not in used:
                used.add(v)
                p1.append(v)
                if rec1(v):
                    return True
                p1.pop()
                used.remove(v)
        return False

    if rec1(x):
        return make_path(g, tuple(p1)), make_path(g, tuple(p2))
    return None

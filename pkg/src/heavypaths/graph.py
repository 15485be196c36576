"""Weighted-graph core: exact rational edge weights, connectivity machinery.

Graphs are simple and undirected, every weight is a non-negative rational,
and values are immutable: every "mutating" operation returns a fresh graph.
Internally weights live as integers over a common denominator (``scale``) so
the exact searches can run on machine integers; the public surface speaks
``fractions.Fraction`` throughout.

Vertices parsed from text are dense ``0..n-1``.  Derived graphs (induced
subgraphs, gadget extensions) keep their original vertex ids so witnesses
lift back without relabeling; gadget vertices take the next free id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import GraphError, ParseError

RationalLike = Union[Fraction, int, str]

#: Distinguished value for vacuous thresholds; compares above every Fraction.
INF = math.inf

#: A finite exact rational or +infinity.
ExtendedRational = Union[Fraction, float]


def as_fraction(value: RationalLike) -> Fraction:
    """Parse an exact rational from int, Fraction, or a 'p/q' / decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GraphError(f"refusing inexact float weight {value!r}; pass a string or Fraction")
    return Fraction(str(value))


def format_extended(value: ExtendedRational) -> str:
    """Render a finite rational exactly, or 'inf'."""
    if value == INF:
        return "inf"
    return str(value)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class WeightedGraph:
    """Simple undirected graph with exact non-negative rational edge weights."""

    __slots__ = (
        "_vertices", "_vset", "_scale", "_adj", "_aux_vertices", "_aux_edges",
        "_wdeg", "_weights_desc_prefix",
    )

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int, RationalLike]],
        aux_vertices: Iterable[int] = (),
        aux_edges: Iterable[tuple[int, int]] = (),
    ):
        vs = sorted(set(int(v) for v in vertices))
        if any(v < 0 for v in vs):
            raise GraphError("vertex ids must be non-negative integers")
        self._vertices = tuple(vs)
        self._vset = frozenset(vs)

        parsed: dict[tuple[int, int], Fraction] = {}
        for u, v, w in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u} is not allowed")
            if u not in self._vset or v not in self._vset:
                raise GraphError(f"edge ({u}, {v}) references an unknown vertex")
            key = (u, v) if u < v else (v, u)
            if key in parsed:
                raise GraphError(f"parallel edge ({key[0]}, {key[1]})")
            wf = as_fraction(w)
            if wf < 0:
                raise GraphError(f"edge ({u}, {v}) has negative weight {wf}")
            parsed[key] = wf

        scale = 1
        for wf in parsed.values():
            scale = _lcm(scale, wf.denominator)
        self._scale = scale

        adj: dict[int, dict[int, int]] = {v: {} for v in vs}
        for (u, v), wf in parsed.items():
            iw = int(wf * scale)
            adj[u][v] = iw
            adj[v][u] = iw
        # Neighbor iteration order is ascending everywhere.
        self._adj = {v: dict(sorted(adj[v].items())) for v in vs}

        self._aux_vertices = frozenset(aux_vertices) & self._vset
        norm_aux = set()
        for u, v in aux_edges:
            key = (u, v) if u < v else (v, u)
            if key[1] in self._adj.get(key[0], {}):
                norm_aux.add(key)
        self._aux_edges = frozenset(norm_aux)

        self._wdeg: Optional[dict[int, int]] = None
        self._weights_desc_prefix: Optional[list[int]] = None

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def scale(self) -> int:
        """Common denominator of all edge weights (1 for integer weights)."""
        return self._scale

    @property
    def aux_vertices(self) -> frozenset[int]:
        return self._aux_vertices

    @property
    def aux_edges(self) -> frozenset[tuple[int, int]]:
        return self._aux_edges

    def has_vertex(self, v: int) -> bool:
        return v in self._vset

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._vset and v in self._adj[u]

    def is_aux_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._aux_edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._require_vertex(v)
        return tuple(self._adj[v])

    def degree(self, v: int) -> int:
        self._require_vertex(v)
        return len(self._adj[v])

    def iweight(self, u: int, v: int) -> int:
        """Integer weight of edge (u, v) at this graph's scale."""
        try:
            return self._adj[u][v]
        except KeyError:
            raise GraphError(f"edge ({u}, {v}) is not in the graph") from None

    def weight(self, u: int, v: int) -> Fraction:
        return Fraction(self.iweight(u, v), self._scale)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def edges(self) -> list[tuple[int, int, Fraction]]:
        """All edges as (u, v, weight) with u < v, sorted."""
        out = []
        for u in self._vertices:
            for v, iw in self._adj[u].items():
                if u < v:
                    out.append((u, v, Fraction(iw, self._scale)))
        return out

    def iadj(self) -> dict[int, dict[int, int]]:
        """Integer-weight adjacency view (read-only by convention)."""
        return self._adj

    def iwdeg(self, v: int) -> int:
        """Integer weighted degree at this graph's scale."""
        if self._wdeg is None:
            self._wdeg = {u: sum(self._adj[u].values()) for u in self._vertices}
        return self._wdeg[v]

    def weights_desc_prefix(self) -> list[int]:
        """Prefix sums of edge weights sorted descending; prefix[k] bounds any k edges."""
        if self._weights_desc_prefix is None:
            ws = sorted(
                (iw for u in self._vertices for v, iw in self._adj[u].items() if u < v),
                reverse=True,
            )
            prefix = [0]
            for w in ws:
                prefix.append(prefix[-1] + w)
            self._weights_desc_prefix = prefix
        return self._weights_desc_prefix

    def _require_vertex(self, v: int) -> None:
        if v not in self._vset:
            raise GraphError(f"vertex {v} is not in the graph")

    # -- equality / repr ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self.edges() == other.edges()

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.edge_count()})"

    # -- derived graphs ------------------------------------------------------

    def _edge_triples(self) -> list[tuple[int, int, Fraction]]:
        return self.edges()

    def induced(self, keep: Iterable[int]) -> "WeightedGraph":
        """Induced subgraph on `keep`, preserving vertex ids and aux marks."""
        ks = set(keep)
        unknown = ks - self._vset
        if unknown:
            raise GraphError(f"vertices {sorted(unknown)} are not in the graph")
        edges = [(u, v, w) for u, v, w in self._edge_triples() if u in ks and v in ks]
        return WeightedGraph(
            ks, edges,
            aux_vertices=self._aux_vertices & ks,
            aux_edges=[e for e in self._aux_edges if e[0] in ks and e[1] in ks],
        )

    def with_edge(self, u: int, v: int, w: RationalLike, aux: bool = False) -> "WeightedGraph":
        """Copy with edge (u, v) added; error if it exists or is a loop."""
        self._require_vertex(u)
        self._require_vertex(v)
        if u == v:
            raise GraphError(f"loop at vertex {u} is not allowed")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) is already present")
        edges = self._edge_triples() + [(u, v, as_fraction(w))]
        aux_e = set(self._aux_edges)
        if aux:
            aux_e.add((u, v) if u < v else (v, u))
        return WeightedGraph(self._vertices, edges, self._aux_vertices, aux_e)

    def with_edge_if_absent(
        self, u: int, v: int, w: RationalLike, aux: bool = False
    ) -> tuple["WeightedGraph", bool]:
        """Add edge (u, v) unless present; returns (graph, whether it was added)."""
        if self.has_edge(u, v):
            return self, False
        return self.with_edge(u, v, w, aux=aux), True

    def with_gadget_vertex(self, attach: tuple[int, int]) -> tuple["WeightedGraph", int]:
        """Copy with a fresh aux vertex joined to both attach points by weight-0 aux edges."""
        a, b = attach
        self._require_vertex(a)
        self._require_vertex(b)
        if a == b:
            raise GraphError("gadget vertex needs two distinct attachment points")
        fresh = self._vertices[-1] + 1 if self._vertices else 0
        edges = self._edge_triples() + [(a, fresh, Fraction(0)), (b, fresh, Fraction(0))]
        aux_e = set(self._aux_edges)
        aux_e.add((min(a, fresh), max(a, fresh)))
        aux_e.add((min(b, fresh), max(b, fresh)))
        g = WeightedGraph(
            self._vertices + (fresh,), edges,
            aux_vertices=self._aux_vertices | {fresh},
            aux_edges=aux_e,
        )
        return g, fresh

    def without_edge(self, u: int, v: int) -> "WeightedGraph":
        """Copy with edge (u, v) removed; error if absent."""
        self.iweight(u, v)
        edges = [(a, b, w) for a, b, w in self._edge_triples() if {a, b} != {u, v}]
        return WeightedGraph(self._vertices, edges, self._aux_vertices, self._aux_edges)

    def scaled(self, c: RationalLike) -> "WeightedGraph":
        """Copy with every weight multiplied by a positive rational c."""
        cf = as_fraction(c)
        if cf <= 0:
            raise GraphError("scale factor must be positive")
        edges = [(u, v, w * cf) for u, v, w in self._edge_triples()]
        return WeightedGraph(self._vertices, edges, self._aux_vertices, self._aux_edges)


# -- paths -------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """Ordered sequence of distinct vertices with its derived weight.

    A single vertex is a valid path of weight 0.
    """

    vertices: tuple[int, ...]
    weight: Fraction

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), self.weight)


def path_iweight(g: WeightedGraph, seq: Sequence[int]) -> int:
    """Integer weight (at g.scale) of the path through seq; validates adjacency."""
    total = 0
    adj = g.iadj()
    for u, v in zip(seq, seq[1:]):
        try:
            total += adj[u][v]
        except KeyError:
            raise GraphError(f"edge ({u}, {v}) is not in the graph") from None
    return total


def path_weight(g: WeightedGraph, seq: Sequence[int]) -> Fraction:
    """Exact weight of the path through seq."""
    return Fraction(path_iweight(g, seq), g.scale)


def make_path(g: WeightedGraph, seq: Sequence[int]) -> Path:
    """Validate seq as a simple path in g and wrap it with its weight."""
    if not seq:
        raise GraphError("a path needs at least one vertex")
    if len(set(seq)) != len(seq):
        raise GraphError(f"path repeats a vertex: {list(seq)}")
    for v in seq:
        g._require_vertex(v)
    return Path(tuple(seq), path_weight(g, seq))


def is_path_sequence(g: WeightedGraph, seq: Sequence[int]) -> bool:
    """True iff seq is a simple path in g (single vertex allowed)."""
    try:
        make_path(g, seq)
    except GraphError:
        return False
    return True


# -- subgraph weight / degrees -------------------------------------------------


def weight_of(g: WeightedGraph, edge_subset: Iterable[tuple[int, int]]) -> Fraction:
    """Sum of the weights of the given edges; unknown edges are an error."""
    total = 0
    for u, v in edge_subset:
        total += g.iweight(u, v)
    return Fraction(total, g.scale)


def weighted_degree(
    g: WeightedGraph, v: int, within: Optional[Iterable[int]] = None
) -> Fraction:
    """Sum of weights of edges at v, optionally restricted to neighbors in `within`."""
    g._require_vertex(v)
    if within is None:
        return Fraction(g.iwdeg(v), g.scale)
    ws = set(within)
    total = sum(iw for u, iw in g.iadj()[v].items() if u in ws)
    return Fraction(total, g.scale)


# -- connectivity -----------------------------------------------------------


def is_connected(g: WeightedGraph) -> bool:
    if g.n == 0:
        return False
    start = g.vertices[0]
    seen = {start}
    stack = [start]
    adj = g.iadj()
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def cut_vertices(g: WeightedGraph) -> tuple[int, ...]:
    """Articulation vertices of a connected graph, ascending, via one DFS low-link pass."""
    if not is_connected(g):
        raise GraphError("cut_vertices requires a connected graph")
    if g.n <= 2:
        return ()
    adj = g.iadj()
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    cuts: set[int] = set()

    root = g.vertices[0]
    parent[root] = None
    counter = 0
    # Iterative DFS keeping an explicit neighbor cursor per frame.
    stack: list[tuple[int, Iterator[int]]] = []
    index[root] = low[root] = counter
    counter += 1
    stack.append((root, iter(adj[root])))
    root_children = 0
    while stack:
        u, it = stack[-1]
        advanced = False
        for v in it:
            if v == parent[u]:
                continue
            if v in index:
                if index[v] < low[u]:
                    low[u] = index[v]
            else:
                parent[v] = u
                index[v] = low[v] = counter
                counter += 1
                if u == root:
                    root_children += 1
                stack.append((v, iter(adj[v])))
                advanced = True
                break
        if not advanced:
            stack.pop()
            p = parent[u]
            if p is not None:
                if low[u] < low[p]:
                    low[p] = low[u]
                if p != root and low[u] >= index[p]:
                    cuts.add(p)
    if root_children >= 2:
        cuts.add(root)
    return tuple(sorted(cuts))


def is_two_connected(g: WeightedGraph) -> bool:
    """At least 3 vertices, connected, and no cut vertex."""
    return g.n >= 3 and is_connected(g) and not cut_vertices(g)


def components_after_removal(
    g: WeightedGraph, removed: Iterable[int]
) -> list[frozenset[int]]:
    """Connected components of g minus `removed`, ordered by smallest member."""
    rs = set(removed)
    unknown = rs - set(g.vertices)
    if unknown:
        raise GraphError(f"vertices {sorted(unknown)} are not in the graph")
    adj = g.iadj()
    left = [v for v in g.vertices if v not in rs]
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for s in left:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in rs and v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


def unweighted_distance(g: WeightedGraph, u: int, v: int) -> Union[int, float]:
    """BFS hop count between u and v; INF when disconnected."""
    g._require_vertex(u)
    g._require_vertex(v)
    if u == v:
        return 0
    adj = g.iadj()
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    if b == v:
                        return dist[b]
                    nxt.append(b)
        frontier = nxt
    return INF


def bfs_path(
    g: WeightedGraph, s: int, t: int, allowed: Optional[Iterable[int]] = None
) -> Optional[tuple[int, ...]]:
    """A deterministic shortest (hop-count) s-t path, or None.

    With `allowed` given, both endpoints and all interior vertices must lie in it.
    """
    ok = set(allowed) if allowed is not None else set(g.vertices)
    if s not in ok or t not in ok:
        return None
    if s == t:
        return (s,)
    adj = g.iadj()
    parent = {s: s}
    frontier = [s]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj[a]:
                if b in ok and b not in parent:
                    parent[b] = a
                    if b == t:
                        seq = [t]
                        while seq[-1] != s:
                            seq.append(parent[seq[-1]])
                        return tuple(reversed(seq))
                    nxt.append(b)
        frontier = nxt
    return None


# -- text format --------------------------------------------------------------


def parse_graph(text: str) -> WeightedGraph:
    """Parse the line-oriented graph format.

    Line 1 holds the vertex count n (vertices are 0..n-1); every following
    line is `u v w` with w a non-negative decimal or p/q rational.  Lines
    starting with '#' (after optional whitespace) are comments.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int, Fraction]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            if n < 0:
                raise ParseError(f"vertex count must be non-negative, got {n}", lineno)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"endpoints must be integers in {line!r}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1} in {line!r}", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(f"duplicate edge ({key[0]}, {key[1]})", lineno)
        seen.add(key)
        try:
            w = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {parts[2]!r}", lineno)
        if w < 0:
            raise ParseError(f"negative weight {parts[2]}", lineno)
        edges.append((u, v, w))
    if n is None:
        raise ParseError("empty input: missing vertex count", 1)
    return WeightedGraph(range(n), edges)


def format_graph(g: WeightedGraph, comment: Optional[str] = None) -> str:
    """Render a graph in the text format; requires dense 0..n-1 vertex ids."""
    if g.vertices != tuple(range(g.n)):
        raise GraphError("only graphs with dense 0..n-1 vertex ids can be serialized")
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    lines.append(str(g.n))
    for u, v, w in g.edges():
        lines.append(f"{u} {v} {w}")
    return "\n".join(lines) + "\n"

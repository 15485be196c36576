"""Benchmark fixtures and instance generators for the verification harness.

The three hand-built fixtures are small weighted graphs whose properties
separate the degree conditions from one another (each refutes a tempting
strengthening); every fixture carries a machine-checkable expectation list.
The generators provide the harness substrate: all labeled 2-connected
graphs at small orders with every weight assignment from a finite set, and
seeded random 2-connected graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterator, Optional, Sequence

from .conditions import ConditionKind, d_star
from .errors import GraphError
from .graph import INF, RationalLike, WeightedGraph, as_fraction, is_two_connected
from .oracle import (
    hamilton_x_path,
    hamilton_xy_path,
    heaviest_x_path,
    heaviest_xy_path,
    spanning_disjoint_pair,
)


@dataclass(frozen=True)
class Fixture:
    """A fixture graph with its designated anchors and parameters."""

    name: str
    graph: WeightedGraph
    x: int
    y: int
    params: dict


@dataclass(frozen=True)
class FixtureCheck:
    """One expected property of a fixture: a description and its evaluation."""

    description: str
    expected: str
    actual: str
    ok: bool


def fig1() -> Fixture:
    """Six-vertex graph separating the distance-2 pair-max condition from the truth.

    Vertices: x=0, y=1, u1=2, u2=3, u3=4, u4=5.  The u2-u3 edge weighs 2,
    all other edges weigh 1.
    """
    x, y, u1, u2, u3, u4 = range(6)
    edges = [
        (x, u1, 1), (y, u1, 1),
        (x, u2, 1), (x, u3, 1),
        (y, u2, 1), (y, u3, 1),
        (u2, u3, 2),
        (u2, u4, 1), (u3, u4, 1),
    ]
    return Fixture("fig1", WeightedGraph(range(6), edges), x, y, {})


def false_statement2_fixture(p: int = 4, q: int = 4) -> Fixture:
    """Two complete graphs sharing the two anchors, every edge of weight 0.

    There is no nonadjacent triple, so the triple-sum condition is vacuous,
    yet no heavy or spanning anchored path can exist.
    """
    if p < 3 or q < 3:
        raise GraphError("both complete parts need at least 3 vertices")
    x, y = 0, 1
    part1 = [x, y] + list(range(2, p))
    part2 = [x, y] + list(range(p, p + q - 2))
    edges = {tuple(sorted(e)) for part in (part1, part2) for e in combinations(part, 2)}
    g = WeightedGraph(range(p + q - 2), [(u, v, 0) for u, v in sorted(edges)])
    return Fixture("fs2", g, x, y, {"p": p, "q": q})


def false_statement3_fixture(p: int = 3, q: int = 3, r: int = 3) -> Fixture:
    """Three complete graphs sharing the two anchors, every edge of weight 0.

    No four vertices are pairwise nonadjacent, so both quadruple conditions
    are vacuous, yet no heavy or spanning x-anchored path can exist.
    """
    if min(p, q, r) < 3:
        raise GraphError("all three complete parts need at least 3 vertices")
    x, y = 0, 1
    sizes = (p, q, r)
    parts = []
    nxt = 2
    for s in sizes:
        parts.append([x, y] + list(range(nxt, nxt + s - 2)))
        nxt += s - 2
    edges = {tuple(sorted(e)) for part in parts for e in combinations(part, 2)}
    g = WeightedGraph(range(nxt), [(u, v, 0) for u, v in sorted(edges)])
    return Fixture("fs3", g, x, y, {"p": p, "q": q, "r": r})


FIXTURE_BUILDERS: dict[str, Callable[..., Fixture]] = {
    "fig1": fig1,
    "fs2": false_statement2_fixture,
    "fs3": false_statement3_fixture,
}


def fixture_checks(fx: Fixture) -> list[FixtureCheck]:
    """Evaluate the fixture's expected-property list."""
    g, x, y = fx.graph, fx.x, fx.y
    checks: list[FixtureCheck] = []

    def add(description: str, expected, actual) -> None:
        checks.append(
            FixtureCheck(description, str(expected), str(actual), expected == actual)
        )

    add("2-connected", True, is_two_connected(g))
    if fx.name == "fig1":
        rep = d_star(g, ConditionKind.PAIR_MAX_DIST2, (x, y))
        add("largest threshold, distance-2 pair-max off the anchors", Fraction(5), rep.d_star)
        res = heaviest_xy_path(g, x, y)
        assert res is not None
        add("heaviest anchored path weight", Fraction(4), res[0])
        add("spanning anchored path exists", False, hamilton_xy_path(g, x, y) is not None)
    elif fx.name == "fs2":
        rep = d_star(g, ConditionKind.TRIPLE_SUM, (x, y))
        add("largest threshold, nonadjacent triple-sum off the anchors", INF, rep.d_star)
        res = heaviest_xy_path(g, x, y)
        assert res is not None
        add("heaviest anchored path weight", Fraction(0), res[0])
        add("spanning anchored path exists", False, hamilton_xy_path(g, x, y) is not None)
        add(
            "spanning disjoint pair exists",
            True,
            spanning_disjoint_pair(g, x, y) is not None,
        )
    elif fx.name == "fs3":
        rep = d_star(g, ConditionKind.QUAD_SUM, (x,))
        add("largest threshold, nonadjacent quad-sum off the first anchor", INF, rep.d_star)
        add("heaviest x-anchored path weight", Fraction(0), heaviest_x_path(g, x)[0])
        add("spanning x-anchored path exists", False, hamilton_x_path(g, x) is not None)
    return checks


# -- exhaustive enumeration ---------------------------------------------------------


def count_two_connected_labeled(n: int) -> int:
    """Brute-force count of labeled 2-connected graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        edges = [(u, v, 1) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        if len(edges) < n:  # a 2-connected graph needs at least n edges
            continue
        if is_two_connected(WeightedGraph(range(n), edges)):
            count += 1
    return count


def enumerate_two_connected(
    n: int,
    weight_set: Sequence[RationalLike],
    max_instances: int = 2_000_000,
) -> Iterator[WeightedGraph]:
    """All labeled 2-connected graphs on n vertices under every weight assignment.

    Deterministic order: edge-set masks ascending, then weight assignments in
    lexicographic order over the sorted weight set.
    """
    if n < 3:
        raise GraphError("2-connected graphs need at least 3 vertices")
    if n > 7:
        raise GraphError("exhaustive enumeration is capped at 7 vertices")
    if not weight_set:
        raise GraphError("weight set must be non-empty")
    weights = sorted({as_fraction(w) for w in weight_set})
    pairs = list(combinations(range(n), 2))
    bound = (1 << len(pairs)) * len(weights) ** len(pairs)
    if bound > max_instances * 64:  # loose pre-check before the precise count
        raise GraphError(
            f"enumeration of n={n} with {len(weights)} weights may exceed the cap"
        )
    masks = []
    total = 0
    for mask in range(1 << len(pairs)):
        m = bin(mask).count("1")
        if m < n:
            continue
        skeleton = [(u, v, 1) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        if is_two_connected(WeightedGraph(range(n), skeleton)):
            masks.append(mask)
            total += len(weights) ** m
            if total > max_instances:
                raise GraphError(
                    f"enumeration would produce more than {max_instances} instances"
                )
    for mask in masks:
        chosen = [(u, v) for i, (u, v) in enumerate(pairs) if mask >> i & 1]
        for assignment in product(weights, repeat=len(chosen)):
            yield WeightedGraph(
                range(n), [(u, v, w) for (u, v), w in zip(chosen, assignment)]
            )


# -- random generation ----------------------------------------------------------------


def random_two_connected(
    n: int,
    weight_lo: int,
    weight_hi: int,
    seed: int,
    max_tries: int = 2000,
) -> WeightedGraph:
    """A seeded random 2-connected graph with uniform integer weights.

    Generate-and-test: edge probability walks a schedule upward until a
    2-connected draw appears; the same seed always yields the same graph.
    """
    if n < 3:
        raise GraphError("2-connected graphs need at least 3 vertices")
    if weight_lo < 0 or weight_hi < weight_lo:
        raise GraphError("need 0 <= weight_lo <= weight_hi")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    schedule = [0.35, 0.45, 0.55, 0.65, 0.75, 0.85]
    for attempt in range(max_tries):
        p = schedule[min(attempt // 25, len(schedule) - 1)]
        chosen = [e for e in pairs if rng.random() < p]
        skeleton = WeightedGraph(range(n), [(u, v, 1) for u, v in chosen])
        if is_two_connected(skeleton):
            return WeightedGraph(
                range(n),
                [(u, v, rng.randint(weight_lo, weight_hi)) for u, v in chosen],
            )
    raise GraphError(f"no 2-connected draw within {max_tries} tries (n={n})")

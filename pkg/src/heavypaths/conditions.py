"""Largest satisfiable thresholds for the weighted-degree hypotheses.

Each condition quantifies over k-tuples of vertices outside an excluded
anchor set (pairwise nonadjacent tuples, except the distance-2 variant) and
demands that an aggregate of their weighted degrees reach a threshold d.
``d_star`` computes the largest d for which the demand holds: the minimum of
the aggregate over all qualifying tuples, or +infinity when no tuple
qualifies (a vacuous hypothesis holds for every d).

Sum-form aggregates are divided by the tuple size so every condition lives
on the same d-scale and the kinds are directly comparable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .errors import GraphError
from .graph import INF, ExtendedRational, WeightedGraph, unweighted_distance


class ConditionKind(enum.Enum):
    """Which hypothesis: tuple size, aggregate, and the tuple qualification."""

    DIRAC_MIN = "dirac_min"            # every single vertex
    ORE_PAIR_SUM = "ore_pair_sum"      # nonadjacent pairs, mean of degrees
    PAIR_MAX = "pair_max"              # nonadjacent pairs, max of degrees
    TRIPLE_SUM = "triple_sum"          # pairwise nonadjacent triples, mean
    TRIPLE_MAX = "triple_max"          # pairwise nonadjacent triples, max
    QUAD_SUM = "quad_sum"              # pairwise nonadjacent quadruples, mean
    QUAD_MAX = "quad_max"              # pairwise nonadjacent quadruples, max
    PAIR_MAX_DIST2 = "pair_max_dist2"  # pairs at unweighted distance exactly 2, max

    def __str__(self) -> str:  # keeps reports compact
        return self.value


#: kind -> (tuple size, aggregate in {"min", "mean", "max"})
_KIND_SHAPE: dict[ConditionKind, tuple[int, str]] = {
    ConditionKind.DIRAC_MIN: (1, "min"),
    ConditionKind.ORE_PAIR_SUM: (2, "mean"),
    ConditionKind.PAIR_MAX: (2, "max"),
    ConditionKind.TRIPLE_SUM: (3, "mean"),
    ConditionKind.TRIPLE_MAX: (3, "max"),
    ConditionKind.QUAD_SUM: (4, "mean"),
    ConditionKind.QUAD_MAX: (4, "max"),
    ConditionKind.PAIR_MAX_DIST2: (2, "max"),
}


def tuple_size(kind: ConditionKind) -> int:
    return _KIND_SHAPE[kind][0]


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a d_star evaluation.

    ``witness_tuple`` is the qualifying tuple achieving the minimum aggregate;
    absent exactly when the hypothesis is vacuous (d_star is +infinity).
    """

    kind: ConditionKind
    excluded: frozenset[int]
    d_star: ExtendedRational
    witness_tuple: Optional[tuple[int, ...]]

    @property
    def vacuous(self) -> bool:
        return self.witness_tuple is None


def _qualifying_tuples(
    g: WeightedGraph, kind: ConditionKind, pool: list[int]
) -> Iterable[tuple[int, ...]]:
    k = tuple_size(kind)
    if kind is ConditionKind.PAIR_MAX_DIST2:
        for pair in combinations(pool, 2):
            if unweighted_distance(g, pair[0], pair[1]) == 2:
                yield pair
        return
    if k == 1:
        for v in pool:
            yield (v,)
        return
    adj = g.iadj()
    for tup in combinations(pool, k):
        if all(b not in adj[a] for a, b in combinations(tup, 2)):
            yield tup


def d_star(
    g: WeightedGraph, kind: ConditionKind, excluded: Iterable[int] = ()
) -> ConditionReport:
    """Largest threshold at which the hypothesis holds, with its witness tuple.

    Brute force over qualifying k-tuples of V minus the excluded anchors;
    ties are broken toward the lexicographically smallest tuple.
    """
    exc = frozenset(excluded)
    unknown = exc - set(g.vertices)
    if unknown:
        raise GraphError(f"excluded vertices {sorted(unknown)} are not in the graph")
    pool = [v for v in g.vertices if v not in exc]
    _, agg = _KIND_SHAPE[kind]

    best: Optional[int] = None  # integer aggregate at graph scale (sums unscaled by k)
    best_tuple: Optional[tuple[int, ...]] = None
    for tup in _qualifying_tuples(g, kind, pool):
        degs = [g.iwdeg(v) for v in tup]
        val = max(degs) if agg == "max" else sum(degs) if agg == "mean" else degs[0]
        if best is None or val < best:
            best = val
            best_tuple = tup
    if best is None:
        return ConditionReport(kind, exc, INF, None)
    k = tuple_size(kind)
    denom = g.scale * (k if agg == "mean" else 1)
    return ConditionReport(kind, exc, Fraction(best, denom), best_tuple)


def hypothesis_holds(
    g: WeightedGraph,
    kind: ConditionKind,
    excluded: Iterable[int],
    d: Fraction,
) -> bool:
    """True iff the hypothesis holds at threshold d (vacuous conditions always hold)."""
    return d <= d_star(g, kind, excluded).d_star

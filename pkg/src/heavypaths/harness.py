"""Verification sweeps and counterexample search.

``verify_instance`` checks one theorem on one graph at the tightest
admissible threshold (d set to the largest value the hypothesis allows).
The conclusion is decided by the exact searches; for the three theorems
with constructive algorithms the construction also runs, its witness is
revalidated from scratch, and the claimed disjunct is confirmed by the
corresponding search.  ``sweep`` folds verify_instance over an instance
stream with error isolation; ``search_counterexample`` hunts for
counterexamples to the two open quadruple-condition problems.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .conditions import ConditionKind, d_star
from .constructive import (
    HAMILTON_PATH,
    HEAVY_DISJOINT_PAIR,
    HEAVY_PATH,
    HEAVY_XY_PATH,
    SPANNING_DISJOINT_PAIR,
    PathOutcome,
    ThreeWayOutcome,
    find_path_t5,
    find_path_t8,
    find_paths_t10,
)
from .errors import GraphError
from .graph import (
    INF,
    WeightedGraph,
    format_extended,
    format_graph,
    is_two_connected,
    parse_graph,
    weight_of,
)
from .instances import enumerate_two_connected, random_two_connected
from .oracle import (
    OracleBudget,
    best_disjoint_pair,
    hamilton_cycle,
    hamilton_path,
    hamilton_x_path,
    hamilton_xy_path,
    heaviest_cycle,
    heaviest_cycles_all_spanning,
    heaviest_path,
    heaviest_x_path,
    heaviest_xy_path,
    spanning_disjoint_pair,
)

#: theorem id -> (condition kind, anchor arity, conclusion family)
THEOREMS: dict[str, tuple[ConditionKind, int, str]] = {
    "T1": (ConditionKind.DIRAC_MIN, 2, "xy-heavy"),
    "T2": (ConditionKind.DIRAC_MIN, 0, "cycle-or-all-heaviest-spanning"),
    "T3": (ConditionKind.ORE_PAIR_SUM, 2, "xy-heavy-or-spanning"),
    "T4": (ConditionKind.ORE_PAIR_SUM, 0, "cycle-or-spanning-cycle"),
    "T5": (ConditionKind.PAIR_MAX, 2, "xy-heavy-or-spanning"),
    "T6": (ConditionKind.PAIR_MAX, 0, "cycle-or-spanning-cycle"),
    "T7": (ConditionKind.TRIPLE_SUM, 1, "x-heavy-or-spanning"),
    "T8": (ConditionKind.TRIPLE_MAX, 1, "x-heavy-or-spanning"),
    "T9": (ConditionKind.TRIPLE_SUM, 2, "three-way"),
    "T10": (ConditionKind.TRIPLE_MAX, 2, "three-way"),
}

CONSTRUCTIVE_THEOREMS = ("T5", "T8", "T10")


@dataclass(frozen=True)
class VerificationRecord:
    graph_id: str
    n: int
    theorem: str
    anchors: tuple[int, ...]
    condition: str
    d_star: str
    d_used: str
    oracle_conclusion: Optional[str]
    constructive_conclusion: Optional[str]
    passed: bool
    error: Optional[str]
    elapsed: float
    graph_text: Optional[str]  # reproduction bundle, present on failure

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "theorem": self.theorem,
            "anchors": list(self.anchors),
            "condition": self.condition,
            "d_star": self.d_star,
            "d_used": self.d_used,
            "oracle_conclusion": self.oracle_conclusion,
            "constructive_conclusion": self.constructive_conclusion,
            "passed": self.passed,
            "error": self.error,
            "elapsed": round(self.elapsed, 6),
            "graph_text": self.graph_text,
        }


def graph_id(g: WeightedGraph) -> str:
    return hashlib.sha256(format_graph(g).encode()).hexdigest()[:12]


def default_anchors(g: WeightedGraph, theorem_id: str) -> tuple[int, ...]:
    arity = THEOREMS[theorem_id][1]
    return tuple(g.vertices[:arity])


def _effective_d(g: WeightedGraph, star) -> Fraction:
    """Finite threshold to run at: d* itself, or past-everything when vacuous."""
    if star == INF:
        return weight_of(g, [(u, v) for u, v, _ in g.edges()]) + 1
    return star


def _oracle_conclusion(
    g: WeightedGraph,
    family: str,
    anchors: tuple[int, ...],
    d: Fraction,
    budget: Optional[OracleBudget],
    cache: dict,
) -> Optional[str]:
    """Which disjunct of the conclusion holds, per the exact searches."""

    def get(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    if family == "xy-heavy":
        x, y = anchors
        res = get(("hxy", x, y, d), lambda: heaviest_xy_path(g, x, y, budget, stop_at=d))
        return "heavy_path" if res is not None and res[0] >= d else None
    if family == "xy-heavy-or-spanning":
        x, y = anchors
        res = get(("hxy", x, y, d), lambda: heaviest_xy_path(g, x, y, budget, stop_at=d))
        if res is not None and res[0] >= d:
            return "heavy_path"
        ham = get(("hamxy", x, y), lambda: hamilton_xy_path(g, x, y, budget))
        return "hamilton_path" if ham is not None else None
    if family == "x-heavy-or-spanning":
        (x,) = anchors
        res = get(("hx", x, d), lambda: heaviest_x_path(g, x, budget, stop_at=d))
        if res[0] >= d:
            return "heavy_path"
        ham = get(("hamx", x), lambda: hamilton_x_path(g, x, budget))
        return "hamilton_path" if ham is not None else None
    if family == "three-way":
        x, y = anchors
        res = get(("hxy", x, y, d), lambda: heaviest_xy_path(g, x, y, budget, stop_at=d))
        if res is not None and res[0] >= d:
            return "heavy_xy_path"
        pair = get(("pair", x, y, d), lambda: best_disjoint_pair(g, x, y, budget, stop_at=d))
        if pair[0] >= d:
            return "heavy_disjoint_pair"
        span = get(("span", x, y), lambda: spanning_disjoint_pair(g, x, y, budget))
        return "spanning_disjoint_pair" if span is not None else None
    if family == "cycle-or-spanning-cycle":
        res = get(("hcyc", 2 * d), lambda: heaviest_cycle(g, budget, stop_at=2 * d))
        if res is not None and res[0] >= 2 * d:
            return "heavy_cycle"
        ham = get(("hamcyc",), lambda: hamilton_cycle(g, budget))
        return "hamilton_cycle" if ham is not None else None
    if family == "cycle-or-all-heaviest-spanning":
        res = get(("hcyc", 2 * d), lambda: heaviest_cycle(g, budget, stop_at=2 * d))
        if res is not None and res[0] >= 2 * d:
            return "heavy_cycle"
        ok = get(("allspan",), lambda: heaviest_cycles_all_spanning(g, budget))
        return "all_heaviest_cycles_spanning" if ok else None
    raise ValueError(f"unknown conclusion family {family}")


def revalidate_outcome(g: WeightedGraph, outcome, d: Fraction) -> None:
    """From-scratch witness check; raises GraphError/AssertionError on any defect."""
    if isinstance(outcome, PathOutcome):
        seq = outcome.path.vertices
        assert len(set(seq)) == len(seq), "witness repeats a vertex"
        w = sum((g.weight(u, v) for u, v in zip(seq, seq[1:])), Fraction(0))
        assert w == outcome.path.weight, "stored weight is stale"
        assert seq[0] == outcome.anchors[0], "witness misses its first anchor"
        if len(outcome.anchors) == 2:
            assert seq[-1] == outcome.anchors[1], "witness misses its second anchor"
        if outcome.kind == HEAVY_PATH:
            assert w >= d, "heavy witness is light"
        else:
            assert outcome.kind == HAMILTON_PATH and len(seq) == g.n, "witness does not span"
        return
    assert isinstance(outcome, ThreeWayOutcome)
    if outcome.kind == HEAVY_XY_PATH:
        assert outcome.path is not None
        revalidate_outcome(
            g, PathOutcome(HEAVY_PATH, outcome.path, outcome.anchors), d
        )
        return
    assert outcome.pair is not None
    p1, p2 = outcome.pair
    for p, anchor in ((p1, outcome.anchors[0]), (p2, outcome.anchors[1])):
        seq = p.vertices
        assert len(set(seq)) == len(seq), "pair witness repeats a vertex"
        w = sum((g.weight(u, v) for u, v in zip(seq, seq[1:])), Fraction(0))
        assert w == p.weight, "stored weight is stale"
        assert seq[0] == anchor, "pair witness misses its anchor"
    assert not set(p1.vertices) & set(p2.vertices), "pair witness overlaps"
    if outcome.kind == HEAVY_DISJOINT_PAIR:
        assert p1.weight + p2.weight >= d, "heavy pair is light"
    else:
        assert outcome.kind == SPANNING_DISJOINT_PAIR
        assert len(p1.vertices) + len(p2.vertices) == g.n, "pair does not span"


def _constructive_conclusion(
    g: WeightedGraph,
    theorem_id: str,
    anchors: tuple[int, ...],
    d: Fraction,
    budget: Optional[OracleBudget],
    cache: dict,
) -> str:
    """Run the construction, revalidate its witness, and oracle-confirm its disjunct."""
    if theorem_id == "T5":
        outcome, _ = find_path_t5(g, anchors[0], anchors[1], d, budget)
    elif theorem_id == "T8":
        outcome, _ = find_path_t8(g, anchors[0], d, budget)
    else:
        outcome, _ = find_paths_t10(g, anchors[0], anchors[1], d, budget)
    revalidate_outcome(g, outcome, d)

    def get(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    kind = outcome.kind
    if theorem_id == "T5":
        x, y = anchors
        if kind == HEAVY_PATH:
            res = get(("hxy", x, y, d), lambda: heaviest_xy_path(g, x, y, budget, stop_at=d))
            ok = res is not None and res[0] >= d
        else:
            ok = get(("hamxy", x, y), lambda: hamilton_xy_path(g, x, y, budget)) is not None
    elif theorem_id == "T8":
        (x,) = anchors
        if kind == HEAVY_PATH:
            ok = get(("hx", x, d), lambda: heaviest_x_path(g, x, budget, stop_at=d))[0] >= d
        else:
            ok = get(("hamx", x), lambda: hamilton_x_path(g, x, budget)) is not None
    else:
        x, y = anchors
        if kind == HEAVY_XY_PATH:
            res = get(("hxy", x, y, d), lambda: heaviest_xy_path(g, x, y, budget, stop_at=d))
            ok = res is not None and res[0] >= d
        elif kind == HEAVY_DISJOINT_PAIR:
            ok = get(("pair", x, y, d), lambda: best_disjoint_pair(g, x, y, budget, stop_at=d))[0] >= d
        else:
            ok = get(("span", x, y), lambda: spanning_disjoint_pair(g, x, y, budget)) is not None
    if not ok:
        raise GraphError(
            f"constructive disjunct {kind} is not confirmed by the exact search"
        )
    return kind


def verify_instance(
    g: WeightedGraph,
    theorem_id: str,
    anchors: Optional[tuple[int, ...]] = None,
    budget: Optional[OracleBudget] = None,
    cache: Optional[dict] = None,
) -> VerificationRecord:
    """Check one theorem's conclusion at its tightest threshold on one graph."""
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem_id}")
    kind, arity, family = THEOREMS[theorem_id]
    if anchors is None:
        anchors = default_anchors(g, theorem_id)
    if len(anchors) != arity:
        raise ValueError(f"{theorem_id} needs {arity} anchors, got {len(anchors)}")
    gid = graph_id(g)
    start = time.perf_counter()
    if cache is None:
        cache = {}
    try:
        if not is_two_connected(g):
            raise GraphError("instance is not 2-connected")
        rep = d_star(g, kind, anchors)
        d = _effective_d(g, rep.d_star)
        oracle_side = _oracle_conclusion(g, family, anchors, d, budget, cache)
        constructive_side = None
        if theorem_id in CONSTRUCTIVE_THEOREMS:
            constructive_side = _constructive_conclusion(
                g, theorem_id, anchors, d, budget, cache
            )
        passed = oracle_side is not None
        elapsed = time.perf_counter() - start
        return VerificationRecord(
            gid, g.n, theorem_id, anchors, str(kind),
            format_extended(rep.d_star), str(d),
            oracle_side, constructive_side, passed, None, elapsed,
            None if passed else format_graph(g),
        )
    except Exception as exc:  # error isolation: the record carries the failure
        elapsed = time.perf_counter() - start
        return VerificationRecord(
            gid, g.n, theorem_id, anchors, str(kind), "?", "?",
            None, None, False, f"{type(exc).__name__}: {exc}", elapsed,
            format_graph(g),
        )


@dataclass
class SweepReport:
    total: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0
    max_elapsed: float = 0.0
    elapsed: float = 0.0
    failures: list[VerificationRecord] = field(default_factory=list)
    records: list[VerificationRecord] = field(default_factory=list)

    def add(self, record: VerificationRecord, keep: bool) -> None:
        self.total += 1
        if record.passed:
            self.passed += 1
        else:
            self.failed += 1
            if record.error is not None:
                self.errors += 1
            self.failures.append(record)
        if record.elapsed > self.max_elapsed:
            self.max_elapsed = record.elapsed
        if keep:
            self.records.append(record)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "errors": self.errors,
            "max_elapsed": round(self.max_elapsed, 6),
            "elapsed": round(self.elapsed, 3),
            "failures": [r.to_dict() for r in self.failures],
        }


def sweep(
    instances: Iterable[WeightedGraph],
    theorem_ids: Iterable[str] = tuple(THEOREMS),
    anchors_for: Optional[Callable[[WeightedGraph, str], tuple[int, ...]]] = None,
    budget: Optional[OracleBudget] = None,
    keep_records: bool = False,
    progress: Optional[Callable[[int], None]] = None,
) -> SweepReport:
    """Run verify_instance over a family; per-instance failures never abort the sweep."""
    tids = list(theorem_ids)
    report = SweepReport()
    start = time.perf_counter()
    for count, g in enumerate(instances, start=1):
        cache: dict = {}
        for tid in tids:
            anchors = anchors_for(g, tid) if anchors_for else default_anchors(g, tid)
            record = verify_instance(g, tid, anchors, budget, cache)
            report.add(record, keep_records)
        if progress is not None and count % 1000 == 0:
            progress(count)
    report.elapsed = time.perf_counter() - start
    return report


# -- counterexample search ------------------------------------------------------------


PROBLEM_CONDITIONS = {
    "P1": ConditionKind.QUAD_SUM,
    "P2": ConditionKind.QUAD_MAX,
}


@dataclass(frozen=True)
class CounterexampleCertificate:
    """Self-contained refutation bundle; re-verifiable from the graph text alone."""

    problem_id: str
    graph_text: str
    d_star: str
    heaviest_path_weight: str
    hamilton_path_exists: bool

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "graph_text": self.graph_text,
            "d_star": self.d_star,
            "heaviest_path_weight": self.heaviest_path_weight,
            "hamilton_path_exists": self.hamilton_path_exists,
        }


def _check_problem_instance(
    g: WeightedGraph, problem_id: str, budget: Optional[OracleBudget]
) -> Optional[CounterexampleCertificate]:
    kind = PROBLEM_CONDITIONS[problem_id]
    rep = d_star(g, kind, ())
    if rep.d_star == INF:
        # Vacuous hypothesis: only the spanning disjunct can save the claim.
        if hamilton_path(g, budget) is None:
            top = heaviest_path(g, budget)
            return CounterexampleCertificate(
                problem_id, format_graph(g), "inf", str(top[0]), False
            )
        return None
    d = rep.d_star
    if d <= 0:
        return None  # any path reaches a non-positive threshold
    res = heaviest_path(g, budget, stop_at=d)
    if res[0] >= d:
        return None
    if hamilton_path(g, budget) is not None:
        return None
    full = heaviest_path(g, budget)
    return CounterexampleCertificate(problem_id, format_graph(g), str(d), str(full[0]), False)


def verify_certificate(cert: CounterexampleCertificate, budget: Optional[OracleBudget] = None) -> bool:
    """Re-run the refutation from the certificate's graph text alone."""
    g = parse_graph(cert.graph_text)
    if not is_two_connected(g):
        return False
    kind = PROBLEM_CONDITIONS[cert.problem_id]
    rep = d_star(g, kind, ())
    if format_extended(rep.d_star) != cert.d_star:
        return False
    if hamilton_path(g, budget) is not None:
        return False
    top = heaviest_path(g, budget)
    if str(top[0]) != cert.heaviest_path_weight:
        return False
    if rep.d_star != INF and top[0] >= rep.d_star:
        return False
    return True


@dataclass
class SearchReport:
    problem_id: str
    exhaustive_checked: int = 0
    random_checked: int = 0
    certificate: Optional[CounterexampleCertificate] = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "problem_id": self.problem_id,
            "exhaustive_checked": self.exhaustive_checked,
            "random_checked": self.random_checked,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "elapsed": round(self.elapsed, 3),
        }


def search_counterexample(
    problem_id: str,
    max_exhaustive_n: int = 5,
    weight_set: tuple = (1, 2),
    random_samples: int = 0,
    random_n: tuple[int, ...] = (6, 7),
    weight_lo: int = 0,
    weight_hi: int = 10,
    seed: int = 0,
    budget: Optional[OracleBudget] = None,
    progress: Optional[Callable[[int], None]] = None,
) -> SearchReport:
    """Exhaustive small-order search, then seeded random draws.

    Any found certificate is re-verified from scratch before being reported.
    """
    if problem_id not in PROBLEM_CONDITIONS:
        raise ValueError(f"unknown problem id {problem_id}")
    report = SearchReport(problem_id)
    start = time.perf_counter()
    for n in range(3, max_exhaustive_n + 1):
        for g in enumerate_two_connected(n, weight_set):
            report.exhaustive_checked += 1
            cert = _check_problem_instance(g, problem_id, budget)
            if cert is not None and verify_certificate(cert, budget):
                report.certificate = cert
                report.elapsed = time.perf_counter() - start
                return report
            if progress is not None and report.exhaustive_checked % 5000 == 0:
                progress(report.exhaustive_checked)
    for i in range(random_samples):
        n = random_n[i % len(random_n)]
        g = random_two_connected(n, weight_lo, weight_hi, seed + i)
        report.random_checked += 1
        cert = _check_problem_instance(g, problem_id, budget)
        if cert is not None and verify_certificate(cert, budget):
            report.certificate = cert
            break
        if progress is not None and report.random_checked % 1000 == 0:
            progress(report.exhaustive_checked + report.random_checked)
    report.elapsed = time.perf_counter() - start
    return report

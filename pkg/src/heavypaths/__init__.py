"""Exact-arithmetic heavy-path library for 2-connected weighted graphs."""

from .conditions import ConditionKind, ConditionReport, d_star, hypothesis_holds
from .constructive import (
    PathOutcome,
    ThreeWayOutcome,
    TraceStep,
    find_path_t5,
    find_path_t8,
    find_paths_t10,
    render_trace,
    theorem1_subroutine,
    verify_trace_replay,
)
from .errors import (
    BudgetExceededError,
    GraphError,
    GuaranteeError,
    HypothesisViolationError,
    InternalConsistencyError,
    ParseError,
)
from .graph import (
    INF,
    ExtendedRational,
    Path,
    WeightedGraph,
    as_fraction,
    bfs_path,
    components_after_removal,
    cut_vertices,
    format_extended,
    format_graph,
    is_two_connected,
    make_path,
    parse_graph,
    path_weight,
    unweighted_distance,
    weight_of,
    weighted_degree,
)
from .harness import (
    CounterexampleCertificate,
    SearchReport,
    SweepReport,
    THEOREMS,
    VerificationRecord,
    search_counterexample,
    sweep,
    verify_certificate,
    verify_instance,
)
from .instances import (
    Fixture,
    FIXTURE_BUILDERS,
    enumerate_two_connected,
    false_statement2_fixture,
    false_statement3_fixture,
    fig1,
    fixture_checks,
    random_two_connected,
)
from .oracle import (
    DEFAULT_BUDGET,
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

__version__ = "0.1.0"

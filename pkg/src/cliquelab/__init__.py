"""k-clique / maximum-clique solving lab.

Three backends over one graph core — a plain backtracking search, a reduction
to CNF with unary counters solved by an embedded CDCL engine, and a reduction
to 0-1 integer programming solved by exact branch-and-bound — plus a seeded
instance generator, brute-force oracles, external-solver file interop and a
benchmark harness that cross-checks all backends against each other.
"""

from .backtrack import SearchStats, SolveOutcome, backtrack_decide, backtrack_max
from .bench import (
    AdapterError,
    BenchRecord,
    CrossCheckError,
    GraphCase,
    SuiteConfig,
    demo_suite_config,
    emit_csv,
    emit_markdown,
    emit_report,
    external_ilp_adapter,
    external_sat_adapter,
    instance_label,
    parse_csv,
    run_suite,
)
from .cnf import (
    CnfFormula,
    VarLayout,
    decode_model,
    encode_kclique,
    read_dimacs,
    write_dimacs,
)
from .errors import ConsistencyError, ParseError, SolveTimeout
from .gen import GenSpec, gen_random_graph, splitmix64_next
from .graph import (
    CliqueInstance,
    Graph,
    VertexSet,
    is_clique,
    non_edge_pairs,
    read_graph,
    write_graph,
)
from .ilp import (
    Constraint,
    IlpModel,
    IlpResult,
    decode_ilp,
    encode_maxclique,
    ilp_solve,
    write_lp,
)
from .oracle import (
    SECONDS_PER_YEAR,
    BudgetExceeded,
    LogNumber,
    binomial_exact,
    binomial_log,
    brute_force_decide,
    expected_clique_count,
    max_clique_brute,
    naive_cost_estimate,
)
from .satsolver import (
    SatResult,
    SatStats,
    enumerate_models,
    sat_solve,
    solve_clauses,
)

__version__ = "0.1.0"

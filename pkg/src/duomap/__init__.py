"""duomap: 2-Max-Duo solver via reduction to maximum independent set."""

__version__ = "0.1.0"

from .errors import (
    DuomapError,
    ParseError,
    ValidationError,
    BudgetError,
    ReductionError,
    LiftError,
)
from .instance import Instance, Duo, Violation, parse_instance, format_instance, validate, duos
from .graphs import (
    build_bipartite,
    build_conflict_graph,
    neighbors_closed_form,
    conflicts_oracle,
    is_independent,
    ConflictGraph,
)
from .squares import (
    Square,
    SquareSeries,
    ContractionRecord,
    find_squares,
    find_maximal_series,
    contract_series,
    shrink_strings,
    eliminate_squares,
    lift,
)
from .pruning import PruneRecord, prune
from .mis import (
    SolverConfig,
    solve_exact,
    solve_greedy,
    solve_local_search,
    solve_backend,
    compiled_kernel_available,
    kernel_name,
)
from .pipeline import (
    Solution,
    CommonPartition,
    approx_solve,
    reconstruct_partition,
    report,
    parse_report,
    strip_timing,
)
from .oracle import (
    GeneratorConfig,
    SuiteReport,
    brute_force_opt,
    graph_opt_size,
    gen_random_instance,
    run_property_suite,
    counterexample_files,
)
from .dot import export_dot

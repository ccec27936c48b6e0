"""Solvers, reductions and oracles for min-max star partitioning.

A star partition colors every edge with one of its endpoints so that the
color classes form stars; the objective is the largest number of distinct
colors any node sees, optionally bounded per node by a capacity.  The
package ships two exact solvers (depth-first recoloring and a max-flow
binary search), the bridge to the min-max indegree problem, node-weighted
variants with their hardness reductions and LP-rounding approximations,
brute-force oracles, generators, and a command line front end.
"""

from .coloring import (
    INFEASIBLE,
    Orientation,
    PartialColoring,
    SolveResult,
    StarDecomposition,
    color_count,
    extract_stars,
    is_valid,
    lower_demand,
    orientation_to_owner,
    owner_to_orientation,
    star_partition_value,
)
from .dfs_solver import (
    SearchState,
    color_one_edge,
    ensure_feasibility,
    minimum_star_coloring,
    preprocess_and_solve,
    solve_with_state,
)
from .flow_solver import (
    FlowNetwork,
    IntegralFlow,
    build_flow_network,
    max_flow_unit,
    minimum_star_coloring_flow,
    slackness,
    test_x,
)
from .graph import (
    Graph,
    GraphKind,
    build_graph,
    degree,
    extract_self_loops,
    max_degree,
    max_edge_size,
    merge_parallel_edges,
)
from .oracle import (
    GeneratorSpec,
    brute_force_kstar,
    brute_force_xstar,
    closed_form,
    generate,
)
from .reductions import (
    PendantReduction,
    ind_to_star,
    max_indegree,
    recover_ind_solution,
    simultaneous_optimum,
    solve_min_max_ind,
)
from .weighted import (
    BinPackingInstance,
    FractionalOrientation,
    GadgetReduction,
    approx2_wind,
    approx4_wstar,
    binpacking_to_wind,
    brute_force_weighted,
    extract_packing,
    gadget_orientation,
    gadget_transform,
    lp_feasible,
    packing_to_orientation,
    round_fractional,
    weighted_indeg_value,
    weighted_star_value,
)

__all__ = [
    "INFEASIBLE",
    "BinPackingInstance",
    "FlowNetwork",
    "FractionalOrientation",
    "GadgetReduction",
    "GeneratorSpec",
    "Graph",
    "GraphKind",
    "IntegralFlow",
    "Orientation",
    "PartialColoring",
    "PendantReduction",
    "SearchState",
    "SolveResult",
    "StarDecomposition",
    "approx2_wind",
    "approx4_wstar",
    "binpacking_to_wind",
    "brute_force_kstar",
    "brute_force_weighted",
    "brute_force_xstar",
    "build_flow_network",
    "build_graph",
    "closed_form",
    "color_count",
    "color_one_edge",
    "degree",
    "ensure_feasibility",
    "extract_packing",
    "extract_self_loops",
    "extract_stars",
    "gadget_orientation",
    "gadget_transform",
    "generate",
    "ind_to_star",
    "is_valid",
    "lower_demand",
    "lp_feasible",
    "max_degree",
    "max_edge_size",
    "max_flow_unit",
    "max_indegree",
    "merge_parallel_edges",
    "minimum_star_coloring",
    "minimum_star_coloring_flow",
    "orientation_to_owner",
    "owner_to_orientation",
    "packing_to_orientation",
    "preprocess_and_solve",
    "recover_ind_solution",
    "round_fractional",
    "simultaneous_optimum",
    "slackness",
    "solve_min_max_ind",
    "solve_with_state",
    "star_partition_value",
    "test_x",
    "weighted_indeg_value",
    "weighted_star_value",
]

__version__ = "0.1.0"

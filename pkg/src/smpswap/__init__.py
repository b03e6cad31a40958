"""Preference-swap repair for stable matching instances."""

from .instance import (
    Edge,
    ExtendedGraph,
    Instance,
    InvalidSubgraph,
    InvalidSwap,
    Side,
    Swap,
    apply_sequence,
    apply_swap,
    build_extended,
    check_subgraph,
    enumerate_swaps,
    project_subgraph,
    validate,
)
from .psm import (
    PsmResult,
    enumerate_perfect_matchings,
    has_perfect_stable,
    psm_bfs,
    psm_via_matchings,
)
from .repair import (
    BlockingAnalysis,
    Infeasible,
    RepairResult,
    analyze,
    assignment_cost,
    brute_force_sequence_repair,
    build_group_sequence,
    group_cost,
    min_repair,
    penalized_cost,
)
from .stability import (
    blocking_edges,
    blocking_edges_extended,
    deferred_acceptance,
    stability_report,
    unmatched_vertices,
)

__version__ = "0.1.0"

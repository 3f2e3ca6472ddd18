"""Constructive cycle finding, extremal constructions and brute-force checks for oriented graphs."""

__version__ = "0.1.0"

from .arith import WindingPlan, is_prime_power, smallest_nondivisor, winding_plan
from .constructions import (
    blowup_cycle,
    blowup_with_apex,
    butterfly_gadget,
    complete_bipartite_digraph,
    directed_cycle,
    extremal_3cycle_vertex,
    random_degree_conditioned,
    rotational_tournament,
    transitive_tournament,
)
from .errors import (
    AntiparallelViolation,
    BadParams,
    BudgetExceeded,
    DuplicateEdge,
    EmbeddingNotFound,
    EmptySet,
    EvenOrder,
    GraphFormatError,
    Infeasible,
    InvalidGraph,
    LoopEdge,
    ModeError,
    NoPlan,
    OddOrder,
    OrientedGraphError,
    OutOfRange,
    PatternTooShort,
    TooLarge,
)
from .finders import (
    FinderResult,
    FinderTrace,
    find_3cycle_through,
    find_4cycle_through,
    find_5cycle_through,
    find_6cycle_through,
    find_butterfly,
    find_lcycle_through,
    find_path_345,
)
from .graph import (
    DIGRAPH,
    ORIENTED,
    DegreeSummary,
    OrientedGraph,
    bfs_distance,
    degree_summary,
    diameter,
    find_edge_within,
    from_edge_list,
    induced_without,
    low_outdegree_vertex,
    min_semidegree,
)
from .io import (
    dumps_edge_list,
    loads_edge_list,
    read_edge_list,
    to_dot,
    write_edge_list,
)
from .oracle import (
    SplitExperimentConfig,
    ThresholdRecord,
    contains_pattern,
    enumerate_oriented,
    ex_di_brute,
    ex_di_formula,
    has_closed_walk,
    has_cycle_exact,
    random_split_experiment,
    shortest_cycle,
    threshold_search,
)
from .walks import (
    CyclePattern,
    GrowthResult,
    WalkShape,
    closed_walk_of_length,
    cycle_type,
    embed_walk_greedy,
    grow_reachable,
    pattern_to_walk,
)
from .witnesses import Butterfly, ClosedWalkWitness, CycleWitness, PathWitness

__all__ = [
    "__version__",
    "AntiparallelViolation",
    "BadParams",
    "BudgetExceeded",
    "Butterfly",
    "ClosedWalkWitness",
    "CyclePattern",
    "CycleWitness",
    "DIGRAPH",
    "DegreeSummary",
    "DuplicateEdge",
    "EmbeddingNotFound",
    "EmptySet",
    "EvenOrder",
    "FinderResult",
    "FinderTrace",
    "GraphFormatError",
    "GrowthResult",
    "Infeasible",
    "InvalidGraph",
    "LoopEdge",
    "ModeError",
    "NoPlan",
    "ORIENTED",
    "OddOrder",
    "OrientedGraph",
    "OrientedGraphError",
    "OutOfRange",
    "PathWitness",
    "PatternTooShort",
    "SplitExperimentConfig",
    "ThresholdRecord",
    "TooLarge",
    "WalkShape",
    "WindingPlan",
    "bfs_distance",
    "blowup_cycle",
    "blowup_with_apex",
    "butterfly_gadget",
    "closed_walk_of_length",
    "complete_bipartite_digraph",
    "contains_pattern",
    "cycle_type",
    "degree_summary",
    "diameter",
    "directed_cycle",
    "dumps_edge_list",
    "embed_walk_greedy",
    "enumerate_oriented",
    "ex_di_brute",
    "ex_di_formula",
    "extremal_3cycle_vertex",
    "find_3cycle_through",
    "find_4cycle_through",
    "find_5cycle_through",
    "find_6cycle_through",
    "find_butterfly",
    "find_edge_within",
    "find_lcycle_through",
    "find_path_345",
    "from_edge_list",
    "grow_reachable",
    "has_closed_walk",
    "has_cycle_exact",
    "induced_without",
    "is_prime_power",
    "loads_edge_list",
    "low_outdegree_vertex",
    "min_semidegree",
    "pattern_to_walk",
    "random_degree_conditioned",
    "random_split_experiment",
    "read_edge_list",
    "rotational_tournament",
    "shortest_cycle",
    "smallest_nondivisor",
    "threshold_search",
    "to_dot",
    "transitive_tournament",
    "winding_plan",
    "write_edge_list",
]

"""Discrete Voronoi games on graphs.

Exact (rational-arithmetic) payoff computation, best-response dynamics,
exhaustive Nash-equilibrium enumeration, a closed-form equilibrium
characterization on cycles, an NP-hardness reduction pipeline from
3-Partition, and social-cost-discrepancy experiments.
"""

from .graph_core import (
    GameInstance,
    InstanceError,
    all_pairs_distances,
    build_instance,
    cycle_instance,
    export_dot,
    is_connected,
    parse_instance,
    serialize_instance,
)
from .engine import (
    GameMode,
    ProfileError,
    VoronoiPartition,
    best_responses,
    cell_radius,
    cell_support,
    delaunay_graph,
    is_happy,
    is_nash,
    payoffs,
    social_cost,
    voronoi_partition,
)
from .cycle import (
    CycleError,
    CycleProfile,
    GapMove,
    appendix_move_payoff,
    apply_move,
    canonicalize,
    cycle_payoffs,
    lemma2_is_nash,
)
from .dynamics import (
    BudgetExceededError,
    MoveRecord,
    Outcome,
    Policy,
    br_move_graph,
    dominance_compare,
    find_br_cycle,
    potential,
    run_dynamic,
)
from .equilibria import (
    Equilibrium,
    EquilibriumReport,
    effective_budget,
    enumerate_equilibria,
    nash_exists,
    verify_payoff_bounds,
)
from .structure import (
    Star,
    StarCheck,
    StructureError,
    is_star,
    restricted_cost,
    star_partition,
    verify_close_lemma,
)
from .reductions import (
    GadgetVerificationError,
    ReductionConstants,
    ReductionError,
    ThreePartitionInstance,
    build_3partition_game,
    discrepancy_family,
    expand_generalized,
    gadget_certificate,
    gadget_search,
    load_gadget,
    reduction_roundtrip,
    three_partition_oracle,
    verify_gadget,
)

__version__ = "1.0.0"

__all__ = [
    "GameInstance",
    "InstanceError",
    "all_pairs_distances",
    "build_instance",
    "cycle_instance",
    "export_dot",
    "is_connected",
    "parse_instance",
    "serialize_instance",
    "GameMode",
    "ProfileError",
    "VoronoiPartition",
    "best_responses",
    "cell_radius",
    "cell_support",
    "delaunay_graph",
    "is_happy",
    "is_nash",
    "payoffs",
    "social_cost",
    "voronoi_partition",
    "CycleError",
    "CycleProfile",
    "GapMove",
    "appendix_move_payoff",
    "apply_move",
    "canonicalize",
    "cycle_payoffs",
    "lemma2_is_nash",
    "BudgetExceededError",
    "MoveRecord",
    "Outcome",
    "Policy",
    "br_move_graph",
    "dominance_compare",
    "find_br_cycle",
    "potential",
    "run_dynamic",
    "Equilibrium",
    "EquilibriumReport",
    "effective_budget",
    "enumerate_equilibria",
    "nash_exists",
    "verify_payoff_bounds",
    "Star",
    "StarCheck",
    "StructureError",
    "is_star",
    "restricted_cost",
    "star_partition",
    "verify_close_lemma",
    "GadgetVerificationError",
    "ReductionConstants",
    "ReductionError",
    "ThreePartitionInstance",
    "build_3partition_game",
    "discrepancy_family",
    "expand_generalized",
    "gadget_certificate",
    "gadget_search",
    "load_gadget",
    "reduction_roundtrip",
    "three_partition_oracle",
    "verify_gadget",
    "__version__",
]

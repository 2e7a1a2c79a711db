"""Seat arrangement toolkit.

Agents with pairwise valuations are seated on the vertices of a seat graph;
each agent's utility is the sum (S), best (B) or worst (W) valuation of its
neighbours. The package evaluates envy and exchange stability, runs swap
dynamics, builds stable arrangements, searches exactly at desk scale and
generates the hardness-reduction families.
"""

from .construct import PairQueue, algorithm1, oned_consecutive
from .dynamics import PairSelectionPolicy, Trace, potential, run_swap_dynamics
from .evaluate import (
    BlockingPair,
    ScoreVector,
    envies,
    find_blocking_pairs,
    find_envy,
    is_envy_free,
    is_exchange_stable,
    min_utility,
    score_levels,
    score_vector,
    utilities,
    utility,
    w_better,
    welfare,
)
from .exact import (
    ExactResult,
    SearchBudget,
    enumerate_arrangements,
    find_envy_free_exact,
    find_exchange_stable_exact,
    find_min_utility_at_least,
    solve_mua_exact,
    solve_mwa_exact,
)
from .gen import (
    BinPackingInstance,
    GeneratedInstance,
    PerturbationSpec,
    PitInstance,
    arrangement_from_packing,
    arrangement_from_triangle_partition,
    gen_binpacking_to_1d_b,
    gen_pit_to_efa_b,
    gen_pit_to_efa_s_strict,
    gen_pit_to_efa_w_binary,
    gen_pit_to_efa_w_strict,
    gen_random,
    perturb_strict,
    solve_binpacking_bruteforce,
    solve_pit_bruteforce,
    triangles_from_arrangement,
)
from .model import (
    Arrangement,
    GraphClass,
    Instance,
    InvalidInstanceError,
    Positions,
    PreferenceClass,
    SeatGraph,
    Utility,
    ValuationMatrix,
    classify_preferences,
    classify_seat_graph,
    swap,
    valuations_from_positions,
    validate_instance,
)

__version__ = "0.1.0"

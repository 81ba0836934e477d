from .base import GLOBAL_OPTIMA, LOCAL_OPTIMA, WITHIN_DISTANCE, Objective, TargetSet
from .functions import (
    cliff_d,
    cliff_objective,
    hiff,
    hiff_objective,
    jump_k,
    jump_objective,
    leadingones,
    leadingones_objective,
    leadingzeros,
    leadingzeros_objective,
    onemax,
    onemax_objective,
    twomax,
    twomax_objective,
    twomax_prime,
    twomax_prime_objective,
)
from .instances import (
    GraphInstance,
    KnapsackInstance,
    MonotonePolynomial,
    PartitionInstance,
    PeakSpec,
    SatInstance,
    bichromatic_edges,
    clause_satisfied,
    colouring_objective,
    gen_partition_random,
    gen_planted_3sat,
    gen_two_cliques,
    instance_from_json,
    knapsack_fitness,
    knapsack_hard,
    load_instance,
    matching_literals,
    maxsat_hard,
    maxsat_hard_count,
    maxsat_hard_enum,
    maxsat_hard_enum_count,
    monotone_poly,
    monotone_poly_objective,
    nearest_peak,
    partition_makespan,
    partition_objective,
    peaks_from_json,
    peaks_objective,
    peaks_to_json,
    planted_3sat_objective,
    sat_count,
    save_instance,
    two_cliques_cut,
    two_cliques_objective,
    weighted_nearest_peak,
)
from .local_optima import (
    is_local_optimum,
    jump_local_optima,
    local_optima,
    maxsat_hard_local_optima,
    two_cliques_local_optima,
    twomax_local_optima,
)
from .registry import make_objective, objective_names

__all__ = [name for name in dir() if not name.startswith("_")]

"""Personalized selection of candidate item sets for decomposable
monotone submodular utilities.

Given one ground set and many user-specific functions, pick a small menu
of candidate sets (two by default) so that the sum over users of each
user's best candidate is as large as possible.
"""

from .core import (
    ConcaveOverModular,
    FacilityLocation,
    Instance,
    ItemSet,
    Modular,
    SubmodularFunction,
    WeightedCoverage,
    group_evaluate,
    lifted_objective,
    multi_objective,
    pair_objective,
)
from .errors import (
    BudgetError,
    CardinalityError,
    FunctionIndexError,
    ItemIndexError,
    MenupickError,
    PreconditionError,
    SchemaError,
)
from .maximize import (
    GREEDY_ALPHA,
    InnerSolver,
    exact_max,
    greedy_max,
    naive_greedy_max,
)
from .oracle import OracleResult, candidate_sets, exact_multi_solve, exact_p1_solve, exact_pair_solve
from .personalize import (
    Partition,
    RoundRecord,
    SolveReport,
    VACUOUS_EPS,
    enumerate_partitions,
    enumeration_solve,
    gamma_bound,
    gamma_factor,
    multi_enumeration_solve,
    partition_at,
    random_partition,
    sampling_solve,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CardinalityError",
    "ConcaveOverModular",
    "FacilityLocation",
    "FunctionIndexError",
    "GREEDY_ALPHA",
    "InnerSolver",
    "Instance",
    "ItemIndexError",
    "ItemSet",
    "MenupickError",
    "Modular",
    "OracleResult",
    "Partition",
    "PreconditionError",
    "RoundRecord",
    "SchemaError",
    "SolveReport",
    "SubmodularFunction",
    "VACUOUS_EPS",
    "WeightedCoverage",
    "candidate_sets",
    "enumerate_partitions",
    "enumeration_solve",
    "exact_max",
    "exact_multi_solve",
    "exact_p1_solve",
    "exact_pair_solve",
    "gamma_bound",
    "gamma_factor",
    "greedy_max",
    "group_evaluate",
    "lifted_objective",
    "multi_enumeration_solve",
    "multi_objective",
    "naive_greedy_max",
    "pair_objective",
    "partition_at",
    "random_partition",
    "sampling_solve",
]

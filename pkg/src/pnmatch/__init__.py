"""Proof nets and unique perfect matchings.

Correctness checking, sequentialization and the kingdom ordering of
multiplicative proof nets, computed through graphs with perfect matchings.
"""

from .errors import *  # noqa: F401,F403
from .graph import (
    Cycle,
    Graph,
    Path,
    bridges,
    enumerate_perfect_matchings,
    graph_from_json,
    graph_to_json,
    is_perfect_matching,
    symmetric_difference_decompose,
)
from .kingdom import KingdomOrder, dependency_relation, is_dependency, kingdom_order, kingdom_order_bruteforce
from .matching import (
    EMPTY,
    Join,
    Union,
    find_alternating_path_through,
    has_perfect_matching,
    is_unique_pm,
    maximum_matching,
    random_upm,
    stem_relation,
    upm_sequentialize,
)
from .proofnet import (
    Kind,
    PairedGraph,
    ProofStructure,
    correctness_graph,
    dr_check,
    mix_count,
    random_net,
    validate,
)
from .sequentialization import (
    AxRule,
    MixRule,
    ParRule,
    TensorRule,
    enumerate_sequentializations,
    mix_sequentialize,
    validate_derivation,
)
from .transitions import TransitionSystem, brute_force_closed_trails, find_compatible_closed_trail
from .translations import graphification, pm_line_graph, proofification, rb_graph

__version__ = "0.1.0"

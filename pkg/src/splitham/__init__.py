"""Constructive verification that 3-connected {K_{1,4}, K_{1,4}+e}-free split graphs
of order at least 13 are Hamilton-connected."""

from .errors import (
    ConstructionFailure,
    ExistenceFailure,
    IllegalSurgery,
    InvalidCover,
    InvalidSpec,
    InvariantViolation,
    MalformedGraph6,
    MalformedGraphInput,
    OrderCapExceeded,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .graph import Graph
from .graph6 import parse_graph6, to_graph6
from .connectivity import is_k_connected, vertex_connectivity
from .patterns import Pattern, PatternWitness, find_induced, is_free, replay_witness
from .split import SplitPartition, assert_connectivity_clique_bound, split_partition
from .configs import ConfigWitness, find_config_A, find_config_B
from .cover import AlternatingCycle, AlternatingPath, ICover, PseudoICover, cover_stats
from .surgery import (
    bound_lengths,
    build_icover,
    build_pseudo_icover,
    min_cycle_pseudo_icover,
    open_cycle_with_outside_vertex,
)
from .hamilton import (
    HamPathCertificate,
    build_icover_avoiding,
    ham_path_from_icover,
    hamilton_connected_oracle,
    verify_certificate,
)
from .generate import GenSpec, enumerate_split_labeled, gen_family_complete_split, gen_random_split
from .harness import VerifyOptions, campaign, verify_graph, verify_theorem

__version__ = "0.1.0"

"""Minimum influential seed sets under a two-threshold, range-limited
linear threshold model: diffusion engine, constructive heuristics, pruning,
a brute-force oracle and a benchmark harness."""

from .diffusion import (
    UNBOUNDED,
    DiffusionState,
    ThresholdConfig,
    is_fully_influenced,
    run_diffusion,
    seed_and_propagate,
    thresholds_of,
)
from .graph import Graph, NetworkStats, compute_stats, diameter, khop_neighborhood, load_graph
from .heuristics import (
    HEURISTICS,
    adh_construct,
    bbh_construct,
    cfh_construct,
    heaviest_bfs_root,
    most_inactive_candidates,
    traversal_greedy_construct,
)
from .oracle import OracleLimits, exact_min_seed, validate_seed_set
from .pruning import prune

__version__ = "0.1.0"

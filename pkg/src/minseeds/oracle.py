"""Brute-force ground truth for tiny instances.

``fixpoint_diffusion`` re-derives the cascade without a queue: each round
every still-inactive vertex counts how many of its neighbours sit on the
current relay frontier. It shares no code with the engine in
:mod:`minseeds.diffusion` and serves as the second implementation that
:func:`validate_seed_set` checks against.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Sequence

from .diffusion import ThresholdConfig, is_fully_influenced, run_diffusion
from .graph import Graph

log = logging.getLogger(__name__)


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimits:
    max_vertices: int = 16
    max_seed_size: Optional[int] = None

    def __post_init__(self):
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be >= 1")


@dataclass
class FixpointResult:
    activated: list[bool]
    influenced: list[bool]
    credits: list[int]
    depth: list[int]

    @property
    def fully_influenced(self) -> bool:
        return all(self.influenced)


def fixpoint_diffusion(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> FixpointResult:
    n = g.n
    theta, alpha = Fraction(str(cfg.theta)), Fraction(str(cfg.alpha))
    deg = [len(a) for a in g.adjacency]
    # needs written out as "smallest k >= 1 with k >= frac * deg"
    inf_need = [max(1, math.ceil(theta * d)) for d in deg]
    act_need = [max(1, math.ceil(alpha * d)) for d in deg]
    limit = cfg.p if cfg.p is not None else n + 1

    active: set[int] = set()
    influenced: set[int] = set()
    closed: set[int] = set()
    credits = [0] * n
    depth = [-1] * n

    for s in seeds:
        if depth[s] == 0:
            continue
        was_active = s in active
        relayed = was_active and s not in closed
        active.add(s)
        influenced.add(s)
        depth[s] = 0
        closed.discard(s)
        if relayed:
            continue
        frontier = {s}
        level = 0
        while frontier and level < limit:
            counts = {}
            for w in range(n):
                if w in active:
                    continue
                k = sum(1 for x in g.adjacency[w] if x in frontier)
                if k:
                    counts[w] = k
            nxt = set()
            for w, k in counts.items():
                total = credits[w] + k
                if total >= inf_need[w]:
                    influenced.add(w)
                if total >= act_need[w]:
                    credits[w] = act_need[w]
                    active.add(w)
                    depth[w] = level + 1
                    if level + 1 < limit:
                        nxt.add(w)
                    else:
                        closed.add(w)
                else:
                    credits[w] = total
            frontier = nxt
            level += 1

    return FixpointResult(
        [v in active for v in range(n)],
        [v in influenced for v in range(n)],
        credits,
        depth,
    )


def validate_seed_set(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> bool:
    """True iff the seeds influence every vertex, per the independent fixpoint routine."""
    return fixpoint_diffusion(g, cfg, seeds).fully_influenced


def exact_min_seed(g: Graph, cfg: ThresholdConfig, limits: OracleLimits = OracleLimits()) -> list[int]:
    """Smallest seed set, searched by cardinality then lexicographically.

    Each subset is inserted in ascending id order, so "minimum" is relative to
    that order (see :func:`order_dependent_subsets`).
    """
    if g.n > limits.max_vertices:
        raise OracleError(f"instance too large for oracle ({g.n} > {limits.max_vertices} vertices)")
    cap = g.n if limits.max_seed_size is None else min(g.n, limits.max_seed_size)
    for k in range(0, cap + 1):
        for subset in combinations(range(g.n), k):
            if is_fully_influenced(g, run_diffusion(g, cfg, subset)):
                return list(subset)
    raise OracleError(f"no feasible seed set with at most {cap} seeds")


def order_dependent_subsets(g: Graph, cfg: ThresholdConfig, max_size: Optional[int] = None,
                            max_vertices: int = 8) -> list[tuple[int, ...]]:
    """Subsets whose feasibility changes with insertion order.

    Exhaustive over all permutations, so only allowed for tiny graphs. Every
    hit is logged at warning level.
    """
    if g.n > max_vertices:
        raise OracleError(f"instance too large for permutation search ({g.n} > {max_vertices})")
    cap = g.n if max_size is None else min(g.n, max_size)
    hits = []
    for k in range(2, cap + 1):
        for subset in combinations(range(g.n), k):
            outcomes = {is_fully_influenced(g, run_diffusion(g, cfg, perm)) for perm in permutations(subset)}
            if len(outcomes) > 1:
                log.warning("feasibility of %s depends on insertion order (%s)", subset, cfg.describe())
                hits.append(subset)
    return hits


def exact_min_any_order(g: Graph, cfg: ThresholdConfig, max_vertices: int = 8) -> list[int]:
    """Smallest seed list over all subsets and all insertion orders."""
    if g.n > max_vertices:
        raise OracleError(f"instance too large for permutation search ({g.n} > {max_vertices})")
    for k in range(0, g.n + 1):
        for subset in combinations(range(g.n), k):
            for perm in permutations(subset):
                if is_fully_influenced(g, run_diffusion(g, cfg, perm)):
                    return list(perm)
    raise OracleError("no feasible seed set")

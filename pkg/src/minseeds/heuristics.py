"""Seed-list constructors.

All constructors insert seeds one by one into a running diffusion state and
stop as soon as every vertex is influenced. They return the raw seed list in
insertion order; pruning is a separate step.

Ties are always broken towards the smallest dense vertex id, so every
constructor is a pure function of the graph and the threshold config.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from .diffusion import DiffusionState, ThresholdConfig, is_fully_influenced, seed_and_propagate
from .graph import Graph, bfs_distances, connected_components


def inactive_degrees(g: Graph, state: DiffusionState) -> list[int]:
    """Number of not-yet-activated neighbours of every vertex."""
    act = state.activated
    return [sum(1 for w in nbrs if not act[w]) for nbrs in g.adjacency]


class _InactiveDegree:
    """Inactive degrees kept in sync with a state through its activation log."""

    def __init__(self, g: Graph, state: DiffusionState):
        self.g = g
        self.state = state
        self.values = inactive_degrees(g, state)
        self._cursor = state.n_activated

    def sync(self) -> list[int]:
        order = self.state.activation_order
        adjacency, values = self.g.adjacency, self.values
        for v in order[self._cursor:]:
            for w in adjacency[v]:
                values[w] -= 1
        self._cursor = len(order)
        return values


def most_inactive_candidates(g: Graph, state: DiffusionState,
                             inactive_degree: Sequence[int] | None = None) -> list[int]:
    """Pick the ``ceil(n''/n')`` inactive vertices with most inactive neighbours.

    ``n'`` counts inactive vertices and ``n''`` sums their inactive degrees,
    so the batch size is the average degree of the inactive subgraph,
    clamped to at least one.
    """
    if inactive_degree is None:
        inactive_degree = inactive_degrees(g, state)
    act = state.activated
    inactive = [v for v in range(g.n) if not act[v]]
    if not inactive:
        raise ValueError("no inactive vertices")
    total = sum(inactive_degree[v] for v in inactive)
    count = max(1, -(-total // len(inactive)))
    return heapq.nsmallest(count, inactive, key=lambda v: (-inactive_degree[v], v))


def _argmax_inactive(candidates, inactive_degree: Sequence[int]) -> int:
    best, best_key = -1, None
    for v in candidates:
        key = (inactive_degree[v], -v)
        if best_key is None or key > best_key:
            best, best_key = v, key
    return best


def adh_construct(g: Graph, cfg: ThresholdConfig) -> list[int]:
    """Average-degree heuristic: seed whole batches of most-inactive vertices."""
    state = DiffusionState.empty(g, cfg)
    tracker = _InactiveDegree(g, state)
    seeds: list[int] = []
    while not is_fully_influenced(g, state):
        batch = most_inactive_candidates(g, state, tracker.sync())
        for u in batch:
            if state.activated[u]:
                continue
            seeds.append(u)
            seed_and_propagate(g, cfg, state, u)
            if is_fully_influenced(g, state):
                break
    return seeds


def cfh_construct(g: Graph, cfg: ThresholdConfig) -> list[int]:
    """Closest-first heuristic.

    The next seed is the most-inactive inactive vertex within two hops of any
    seed chosen so far; when that pool is empty the global most-inactive
    vertex is taken instead.
    """
    state = DiffusionState.empty(g, cfg)
    tracker = _InactiveDegree(g, state)
    seeds: list[int] = []
    near: set[int] = set()
    while not is_fully_influenced(g, state):
        values = tracker.sync()
        act = state.activated
        pool = [v for v in near if not act[v]]
        near.difference_update(v for v in list(near) if act[v])
        if pool:
            u = _argmax_inactive(pool, values)
        else:
            u = _argmax_inactive((v for v in range(g.n) if not act[v]), values)
        seeds.append(u)
        seed_and_propagate(g, cfg, state, u)
        near.update(bfs_distances(g, [u], limit=2))
    return seeds


@dataclass
class BfsTreeScore:
    root_of: dict[int, int]
    weight: dict[int, int]
    best_root: int
    best_weight: int


def bfs_tree_scores(g: Graph, state: DiffusionState, roots: Sequence[int],
                    literal: bool = False, inactive_degree: Sequence[int] | None = None) -> BfsTreeScore:
    """Multi-source BFS over inactive vertices accumulating path weights.

    A discovered vertex's weight is its own inactive degree plus the weight of
    the vertex that discovered it. With ``literal=True`` the vertex's own term
    is dropped, so every tree vertex simply inherits its root's weight.
    """
    if not roots:
        raise ValueError("empty root list")
    if inactive_degree is None:
        inactive_degree = inactive_degrees(g, state)
    act = state.activated
    root_of: dict[int, int] = {}
    weight: dict[int, int] = {}
    queue: deque[int] = deque()
    for r in roots:
        if act[r]:
            raise ValueError(f"root {r} is already activated")
        if r in root_of:
            continue
        root_of[r] = r
        weight[r] = inactive_degree[r]
        queue.append(r)
    adjacency = g.adjacency
    while queue:
        u = queue.popleft()
        wu, ru = weight[u], root_of[u]
        for v in adjacency[u]:
            if act[v] or v in root_of:
                continue
            root_of[v] = ru
            weight[v] = wu if literal else inactive_degree[v] + wu
            queue.append(v)
    best_v = min(weight, key=lambda v: (-weight[v], v))
    return BfsTreeScore(root_of, weight, root_of[best_v], weight[best_v])


def heaviest_bfs_root(g: Graph, state: DiffusionState, roots: Sequence[int],
                      literal: bool = False, inactive_degree: Sequence[int] | None = None) -> int:
    return bfs_tree_scores(g, state, roots, literal, inactive_degree).best_root


def bbh_construct(g: Graph, cfg: ThresholdConfig, literal: bool = False) -> list[int]:
    """Backbone heuristic: from each candidate batch seed only the root of the heaviest BFS tree."""
    state = DiffusionState.empty(g, cfg)
    tracker = _InactiveDegree(g, state)
    seeds: list[int] = []
    while not is_fully_influenced(g, state):
        values = tracker.sync()
        batch = most_inactive_candidates(g, state, values)
        u = heaviest_bfs_root(g, state, batch, literal, values)
        seeds.append(u)
        seed_and_propagate(g, cfg, state, u)
    return seeds


def traversal_order(g: Graph, mode: str, expand: str = "degree") -> list[int]:
    """Visit order of a BFS or DFS forest.

    Components are taken largest first, each rooted at its highest-degree
    vertex. ``expand="degree"`` explores neighbours from highest to lowest
    degree; ``expand="id"`` uses plain ascending id order.
    """
    if mode not in ("bfs", "dfs"):
        raise ValueError(f"unknown traversal mode {mode!r}")
    if expand not in ("degree", "id"):
        raise ValueError(f"unknown expansion order {expand!r}")
    adjacency = g.adjacency
    if expand == "degree":
        ranked = [sorted(nbrs, key=lambda v: (-len(adjacency[v]), v)) for nbrs in adjacency]
    else:
        ranked = [list(nbrs) for nbrs in adjacency]
    seen = [False] * g.n
    order: list[int] = []
    for comp in connected_components(g):
        root = min(comp, key=lambda v: (-len(adjacency[v]), v))
        if mode == "bfs":
            seen[root] = True
            queue = deque([root])
            while queue:
                u = queue.popleft()
                order.append(u)
                for w in ranked[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
        else:
            # pushing in reverse and skipping visited on pop reproduces recursive preorder
            stack = [root]
            while stack:
                u = stack.pop()
                if seen[u]:
                    continue
                seen[u] = True
                order.append(u)
                stack.extend(w for w in reversed(ranked[u]) if not seen[w])
    return order


def traversal_greedy_construct(g: Graph, cfg: ThresholdConfig, mode: str, expand: str = "degree") -> list[int]:
    """Walk a BFS/DFS order and seed every visited vertex that is still uninfluenced."""
    state = DiffusionState.empty(g, cfg)
    seeds: list[int] = []
    for u in traversal_order(g, mode, expand):
        if is_fully_influenced(g, state):
            break
        if not state.influenced[u]:
            seeds.append(u)
            seed_and_propagate(g, cfg, state, u)
    return seeds


def bfs_greedy_construct(g: Graph, cfg: ThresholdConfig) -> list[int]:
    return traversal_greedy_construct(g, cfg, "bfs")


def dfs_greedy_construct(g: Graph, cfg: ThresholdConfig) -> list[int]:
    return traversal_greedy_construct(g, cfg, "dfs")


HEURISTICS: dict[str, Callable[[Graph, ThresholdConfig], list[int]]] = {
    "dfs-greedy": dfs_greedy_construct,
    "bfs-greedy": bfs_greedy_construct,
    "adh": adh_construct,
    "cfh": cfh_construct,
    "bbh": bbh_construct,
}


def get_heuristic(name: str) -> Callable[[Graph, ThresholdConfig], list[int]]:
    try:
        return HEURISTICS[name]
    except KeyError:
        raise KeyError(f"unknown heuristic {name!r}; expected one of {', '.join(HEURISTICS)}") from None

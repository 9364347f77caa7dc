"""Tiered linear-threshold diffusion with a bounded propagation range.

Every vertex has two integer thresholds derived from its degree: it becomes
*influenced* once ``influence_need`` relaying neighbours have reached it and
*activated* (starts relaying) once ``activation_need`` have. Seeds are
inserted one at a time and each insertion runs a FIFO cascade; a vertex that
activated ``p`` hops down a relay chain joins the active set but does not
forward.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .graph import Graph

#: Propagation range meaning "no limit".
UNBOUNDED = None


@dataclass(frozen=True)
class ThresholdConfig:
    theta: float = 0.4
    alpha: float = 0.6
    p: Optional[int] = 3

    def __post_init__(self):
        if not 0 < self.theta <= self.alpha <= 1:
            raise ValueError(f"need 0 < theta <= alpha <= 1, got theta={self.theta}, alpha={self.alpha}")
        if self.p is not None and (isinstance(self.p, bool) or int(self.p) != self.p or self.p < 1):
            raise ValueError(f"propagation range must be a positive integer or unbounded, got {self.p!r}")

    @property
    def unbounded(self) -> bool:
        return self.p is None

    def with_p(self, p: Optional[int]) -> "ThresholdConfig":
        return ThresholdConfig(self.theta, self.alpha, p)

    def describe(self) -> str:
        return f"theta={self.theta} alpha={self.alpha} p={'unbounded' if self.p is None else self.p}"


def _need(fraction: float, deg: int) -> int:
    # exact rational arithmetic: 0.7 * 10 must give 7, not 7.000000000000001
    return max(1, math.ceil(Fraction(str(fraction)) * deg))


def thresholds_of(g: Graph, cfg: ThresholdConfig, v: int) -> tuple[int, int]:
    """``(influence_need, activation_need)`` of vertex ``v``."""
    d = g.degree(v)
    return _need(cfg.theta, d), _need(cfg.alpha, d)


def threshold_table(g: Graph, cfg: ThresholdConfig) -> tuple[tuple[int, ...], tuple[int, ...]]:
    infl: dict[int, int] = {}
    act: dict[int, int] = {}
    inf_need, act_need = [], []
    for v in range(g.n):
        d = g.degree(v)
        if d not in infl:
            infl[d] = _need(cfg.theta, d)
            act[d] = _need(cfg.alpha, d)
        inf_need.append(infl[d])
        act_need.append(act[d])
    return tuple(inf_need), tuple(act_need)


@dataclass
class DiffusionState:
    """Mutable cascade state for one (graph, config) pair.

    ``depth[v]`` is -1 for vertices that never activated. ``activation_order``
    lists vertices in the order they joined the active set, which lets
    callers maintain derived quantities incrementally.
    """

    influence_need: tuple[int, ...]
    activation_need: tuple[int, ...]
    activated: list[bool]
    influenced: list[bool]
    credits: list[int]
    depth: list[int]
    relay_closed: list[bool]
    activation_order: list[int] = field(default_factory=list)
    n_influenced: int = 0

    @classmethod
    def empty(cls, g: Graph, cfg: ThresholdConfig) -> "DiffusionState":
        inf_need, act_need = threshold_table(g, cfg)
        n = g.n
        return cls(inf_need, act_need, [False] * n, [False] * n, [0] * n, [-1] * n, [False] * n)

    @property
    def n(self) -> int:
        return len(self.activated)

    @property
    def n_activated(self) -> int:
        return len(self.activation_order)

    def activated_set(self) -> set[int]:
        return set(self.activation_order)

    def influenced_set(self) -> set[int]:
        return {v for v, f in enumerate(self.influenced) if f}

    def copy(self) -> "DiffusionState":
        return DiffusionState(
            self.influence_need,
            self.activation_need,
            self.activated.copy(),
            self.influenced.copy(),
            self.credits.copy(),
            self.depth.copy(),
            self.relay_closed.copy(),
            self.activation_order.copy(),
            self.n_influenced,
        )

    def snapshot(self) -> tuple:
        """Hashable view of everything except the threshold tables."""
        return (tuple(self.activated), tuple(self.influenced), tuple(self.credits),
                tuple(self.depth), tuple(self.relay_closed))


def seed_and_propagate(g: Graph, cfg: ThresholdConfig, state: DiffusionState, u: int) -> DiffusionState:
    """Insert ``u`` as a seed and run the resulting cascade in place.

    A vertex that is already a seed is left alone. A vertex activated earlier
    by the cascade is reopened as a depth-0 relayer; if it had already
    relayed, its neighbours keep the single credit they got from it.
    """
    if not 0 <= u < g.n:
        raise IndexError(f"vertex {u} out of range for graph with {g.n} vertices")
    if state.depth[u] == 0:
        return state

    if state.activated[u]:
        already_relayed = not state.relay_closed[u]
        state.depth[u] = 0
        state.relay_closed[u] = False
        if already_relayed:
            return state
    else:
        state.activated[u] = True
        state.activation_order.append(u)
        state.depth[u] = 0
        if not state.influenced[u]:
            state.influenced[u] = True
            state.n_influenced += 1

    p = cfg.p
    adjacency = g.adjacency
    activated, influenced, credits = state.activated, state.influenced, state.credits
    depth, relay_closed = state.depth, state.relay_closed
    inf_need, act_need = state.influence_need, state.activation_need
    order = state.activation_order

    queue = deque([u])
    while queue:
        x = queue.popleft()
        contact = depth[x] + 1
        for w in adjacency[x]:
            if activated[w]:
                continue
            c = credits[w] + 1
            credits[w] = c
            if not influenced[w] and c >= inf_need[w]:
                influenced[w] = True
                state.n_influenced += 1
            if c >= act_need[w]:
                activated[w] = True
                order.append(w)
                depth[w] = contact
                if p is None or contact < p:
                    queue.append(w)
                else:
                    relay_closed[w] = True
    return state


def run_diffusion(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> DiffusionState:
    """Fold :func:`seed_and_propagate` over ``seeds`` from the empty state."""
    check_seed_list(g, seeds)
    state = DiffusionState.empty(g, cfg)
    for u in seeds:
        seed_and_propagate(g, cfg, state, u)
    return state


def is_fully_influenced(g: Graph, state: DiffusionState) -> bool:
    return state.n_influenced == g.n


def check_seed_list(g: Graph, seeds: Iterable[int]) -> None:
    seen: set[int] = set()
    for u in seeds:
        if not 0 <= u < g.n:
            raise IndexError(f"seed {u} out of range for graph with {g.n} vertices")
        if u in seen:
            raise ValueError(f"seed {u} appears twice")
        seen.add(u)


def dump_state(g: Graph, state: DiffusionState) -> str:
    """Debug dump, one ``vertex,label,influenced,activated,depth,credits`` line per vertex."""
    lines = ["vertex,label,influenced,activated,depth,credits"]
    for v in range(g.n):
        d = state.depth[v]
        lines.append(
            f"{v},{g.labels[v]},{int(state.influenced[v])},{int(state.activated[v])},"
            f"{'' if d < 0 else d},{state.credits[v]}"
        )
    return "\n".join(lines) + "\n"

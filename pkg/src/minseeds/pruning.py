"""Reverse-order removal of redundant seeds."""

from __future__ import annotations

from typing import Sequence

from .diffusion import ThresholdConfig, is_fully_influenced, run_diffusion
from .graph import Graph


class NotACoverError(ValueError):
    pass


def _covers(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> bool:
    return is_fully_influenced(g, run_diffusion(g, cfg, seeds))


def prune_pass(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> list[int]:
    """One sweep from the last-inserted seed to the first.

    Each seed is dropped if the remaining list, re-diffused from scratch in
    its original relative order, still influences every vertex.
    """
    current = list(seeds)
    for u in reversed(seeds):
        trial = [v for v in current if v != u]
        if _covers(g, cfg, trial):
            current = trial
    return current


def prune(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int], max_passes: int | None = None) -> list[int]:
    """Remove redundant seeds, keeping the relative order of the survivors.

    Sweeps are repeated until one removes nothing, which makes the result
    1-minimal: dropping any single remaining seed loses full influence.
    Insertion order matters for the cascade, so a later removal can make an
    earlier-kept seed redundant; the first sweep alone does not guarantee
    minimality. ``max_passes=1`` gives the single-sweep variant.
    """
    if not _covers(g, cfg, seeds):
        raise NotACoverError("seed list not a cover")
    current = list(seeds)
    passes = 0
    while max_passes is None or passes < max_passes:
        passes += 1
        reduced = prune_pass(g, cfg, current)
        if len(reduced) == len(current):
            break
        current = reduced
    return current


def is_one_minimal(g: Graph, cfg: ThresholdConfig, seeds: Sequence[int]) -> bool:
    return _covers(g, cfg, seeds) and not any(
        _covers(g, cfg, [v for v in seeds if v != u]) for u in seeds
    )

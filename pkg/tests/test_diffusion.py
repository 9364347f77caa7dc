import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minseeds.diffusion import (
    DiffusionState,
    ThresholdConfig,
    dump_state,
    is_fully_influenced,
    run_diffusion,
    seed_and_propagate,
    thresholds_of,
)
from minseeds.graph import Graph, diameter
from minseeds.oracle import fixpoint_diffusion

from conftest import DEFAULT_CFG, configs, graph_of, ids, small_graphs


def seed_lists(g, max_size=None):
    return st.lists(st.integers(0, g.n - 1), unique=True, max_size=max_size or g.n)


@pytest.mark.parametrize("theta,alpha,p", [(0, 0.5, 1), (0.6, 0.4, 1), (0.4, 1.2, 1), (0.4, 0.6, 0), (0.4, 0.6, 2.5)])
def test_config_rejects(theta, alpha, p):
    with pytest.raises(ValueError):
        ThresholdConfig(theta, alpha, p)


def test_thresholds(prune_graph):
    v5 = prune_graph.index_of("5")
    assert prune_graph.degree(v5) == 6
    assert thresholds_of(prune_graph, DEFAULT_CFG, v5)[1] == 4
    iso = Graph.from_edges([(0, 1)], labels=[0, 1, 2])
    assert thresholds_of(iso, DEFAULT_CFG, 2) == (1, 1)
    star5 = graph_of([(0, i) for i in range(1, 6)])
    assert thresholds_of(star5, DEFAULT_CFG, 0) == (2, 3)


def test_thresholds_exact_arithmetic():
    # 0.7 * 10 is 7.000000000000001 in binary floating point
    star10 = graph_of([(0, i) for i in range(1, 11)])
    assert thresholds_of(star10, ThresholdConfig(0.3, 0.7, 3), 0) == (3, 7)


def test_prune_graph_vertex5_activated_by_four_seeds(prune_graph):
    state = run_diffusion(prune_graph, DEFAULT_CFG, ids(prune_graph, 4, 8, 9, 10))
    assert state.activated[prune_graph.index_of("5")]


def test_hop_graph_two_seeds_activate_4(hop_graph):
    state = DiffusionState.empty(hop_graph, DEFAULT_CFG)
    v4 = hop_graph.index_of("4")
    seed_and_propagate(hop_graph, DEFAULT_CFG, state, hop_graph.index_of("2"))
    assert not state.activated[v4]
    seed_and_propagate(hop_graph, DEFAULT_CFG, state, hop_graph.index_of("5"))
    assert state.activated[v4]
    assert state.depth[v4] == 1


def test_reseed_seed_is_idempotent(prune_graph):
    state = run_diffusion(prune_graph, DEFAULT_CFG, ids(prune_graph, 1, 4))
    before = state.snapshot()
    seed_and_propagate(prune_graph, DEFAULT_CFG, state, prune_graph.index_of("4"))
    assert state.snapshot() == before


def test_star_center():
    g = graph_of([("c", x) for x in "abcd" if x != "c"] + [("c", "e")])
    state = run_diffusion(g, DEFAULT_CFG, [g.index_of("c")])
    for leaf in "abde":
        v = g.index_of(leaf)
        assert state.influenced[v] and state.activated[v]
        assert state.depth[v] == 1


def test_empty_seed_list(prune_graph):
    state = run_diffusion(prune_graph, DEFAULT_CFG, [])
    assert not any(state.activated) and not any(state.influenced)


def test_prune_graph_pruned_list_covers(prune_graph):
    state = run_diffusion(prune_graph, DEFAULT_CFG, ids(prune_graph, 1, 4, 9, 8, 10, 6))
    assert is_fully_influenced(prune_graph, state)
    assert state.n_influenced == 14


def test_prune_graph_full_list(prune_graph):
    state = run_diffusion(prune_graph, DEFAULT_CFG, ids(prune_graph, 5, 1, 4, 9, 8, 10, 6))
    assert is_fully_influenced(prune_graph, state)
    v5 = prune_graph.index_of("5")
    assert state.activated[v5] and state.depth[v5] == 0


def test_reseed_reopens_closed_vertex():
    g = graph_of([(0, 1), (1, 2)])
    cfg = ThresholdConfig(0.5, 0.5, 1)
    state = run_diffusion(g, cfg, [0])
    assert state.relay_closed[1] and not state.influenced[2]
    seed_and_propagate(g, cfg, state, 1)
    assert state.depth[1] == 0 and not state.relay_closed[1]
    assert state.influenced[2]


def test_out_of_range_and_duplicates(prune_graph):
    with pytest.raises(IndexError):
        seed_and_propagate(prune_graph, DEFAULT_CFG, DiffusionState.empty(prune_graph, DEFAULT_CFG), 99)
    with pytest.raises(ValueError):
        run_diffusion(prune_graph, DEFAULT_CFG, [1, 1])


def test_dump_state(hop_graph):
    text = dump_state(hop_graph, run_diffusion(hop_graph, DEFAULT_CFG, [hop_graph.index_of("2")]))
    lines = text.splitlines()
    assert lines[0] == "vertex,label,influenced,activated,depth,credits"
    assert len(lines) == hop_graph.n + 1


def test_diameter_range_differs_from_unbounded():
    # 0-3-2 reaches 2 at depth 2 = diameter, so 2 cannot relay on to 1
    g = graph_of([(0, 2), (0, 3), (1, 2), (2, 3)])
    assert diameter(g) == 2
    at_diam = run_diffusion(g, ThresholdConfig(0.5, 0.5, 2), [0])
    free = run_diffusion(g, ThresholdConfig(0.5, 0.5, None), [0])
    assert not at_diam.influenced[1]
    assert free.influenced[1]


@settings(max_examples=150, deadline=None)
@given(st.data(), small_graphs(), configs)
def test_state_invariants(data, g, cfg):
    seeds = data.draw(seed_lists(g))
    state = DiffusionState.empty(g, cfg)
    prev = state.copy()
    for u in seeds:
        seed_and_propagate(g, cfg, state, u)
        for v in range(g.n):
            # monotone sets and credits
            assert prev.activated[v] <= state.activated[v]
            assert prev.influenced[v] <= state.influenced[v]
            assert prev.credits[v] <= state.credits[v]
            # depth only ever changes from undefined, or to 0 when v itself is seeded
            if prev.depth[v] != state.depth[v]:
                assert prev.depth[v] == -1 or (v == u and state.depth[v] == 0)
            assert state.activated[v] <= state.influenced[v]
            assert (state.depth[v] >= 0) == state.activated[v]
            if cfg.p is not None:
                assert state.depth[v] <= cfg.p
            assert state.credits[v] <= g.degree(v)
        assert state.depth[u] == 0
        prev = state.copy()
    assert state.n_influenced == sum(state.influenced)


@settings(max_examples=150, deadline=None)
@given(st.data(), small_graphs(), configs)
def test_appending_seeds_keeps_coverage(data, g, cfg):
    seeds = data.draw(seed_lists(g))
    extra = [v for v in data.draw(st.permutations(range(g.n))) if v not in seeds][:2]
    base = run_diffusion(g, cfg, seeds)
    more = run_diffusion(g, cfg, seeds + extra)
    assert base.influenced_set() <= more.influenced_set()
    assert base.activated_set() <= more.activated_set()


@settings(max_examples=200, deadline=None)
@given(st.data(), small_graphs(), configs)
def test_matches_fixpoint_implementation(data, g, cfg):
    seeds = data.draw(seed_lists(g))
    ours = run_diffusion(g, cfg, seeds)
    ref = fixpoint_diffusion(g, cfg, seeds)
    assert ours.activated == ref.activated
    assert ours.influenced == ref.influenced
    assert ours.depth == ref.depth


@settings(max_examples=100, deadline=None)
@given(st.data(), small_graphs(min_n=2), configs)
def test_saturates_at_n_minus_one(data, g, cfg):
    seeds = data.draw(seed_lists(g))
    free = run_diffusion(g, cfg.with_p(None), seeds)
    capped = run_diffusion(g, cfg.with_p(g.n - 1), seeds)
    assert free.activated == capped.activated
    assert free.influenced == capped.influenced


@given(st.data(), small_graphs(), configs)
def test_deterministic(data, g, cfg):
    seeds = data.draw(seed_lists(g))
    assert run_diffusion(g, cfg, seeds).snapshot() == run_diffusion(g, cfg, seeds).snapshot()

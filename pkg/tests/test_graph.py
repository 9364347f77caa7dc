import gzip
import io
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from minseeds.graph import (
    Graph,
    GraphFormatError,
    bfs_distances,
    compute_stats,
    connected_components,
    diameter,
    khop_neighborhood,
    load_graph,
    read_edgelist,
    triangle_counts,
    write_edgelist,
)

from conftest import small_graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_single_edge():
    g = load_graph(b"a b\n")
    assert (g.n, g.m) == (2, 1)
    assert g.labels == ("a", "b")


def test_duplicate_and_self_loop_dropped():
    g, summary = read_edgelist(b"1 2\n2 1\n1 1\n")
    assert (g.n, g.m) == (2, 1)
    assert summary.duplicates == 1
    assert summary.self_loops == 1
    assert summary.edges_read == 3


def test_karate_size(karate):
    assert (karate.n, karate.m) == (34, 78)


def test_numeric_labels_sorted_numerically():
    g = load_graph(b"10 2\n2 1\n")
    assert g.labels == ("1", "2", "10")
    assert g.neighbors(g.index_of("2")) == (0, 2)


def test_mixed_labels_sorted_lexicographically():
    g = load_graph(b"b 10\n10 a\n")
    assert g.labels == ("10", "a", "b")


def test_comments_blank_lines_and_separators():
    text = b"# header\n% other\n\n1,2\n2 ,3\n3\t4\n"
    g = load_graph(text)
    assert (g.n, g.m) == (4, 3)


@pytest.mark.parametrize("text,line", [(b"1 2\n1 2 3\n", 2), (b"# c\n5\n", 2)])
def test_malformed_line(text, line):
    with pytest.raises(GraphFormatError) as err:
        load_graph(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


@pytest.mark.parametrize("text", [b"", b"# only comments\n\n"])
def test_empty_input(text):
    with pytest.raises(GraphFormatError, match="no edges"):
        load_graph(text)


def test_gzip_and_stream(tmp_path):
    raw = b"1 2\n2 3\n"
    path = tmp_path / "g.txt.gz"
    path.write_bytes(gzip.compress(raw))
    assert load_graph(str(path)).m == 2
    assert load_graph(io.BytesIO(gzip.compress(raw))).m == 2
    assert load_graph(io.BytesIO(raw)).m == 2


def test_mtx_format():
    text = b"%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n3 2\n"
    g = load_graph(text, fmt="mtx")
    assert (g.n, g.m) == (3, 2)


def test_round_trip(karate, tmp_path):
    path = tmp_path / "k.txt"
    write_edgelist(karate, str(path))
    again = load_graph(str(path))
    assert again == karate


@given(small_graphs(min_n=2))
def test_graph_invariants(g):
    assert sum(len(a) for a in g.adjacency) == 2 * g.m
    for v, nbrs in enumerate(g.adjacency):
        assert list(nbrs) == sorted(set(nbrs))
        assert v not in nbrs
        for w in nbrs:
            assert v in g.adjacency[w]


def test_karate_stats(karate):
    s = compute_stats(karate).rounded()
    assert s == {"nodes": 34, "edges": 78, "density": 0.139, "avg_triangles": 3.9706,
                 "avg_degree": 4.588, "avg_cc": 0.571}


def brute_triangles(g):
    adj = [set(a) for a in g.adjacency]
    out = [0] * g.n
    for a, b, c in combinations(range(g.n), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            out[a] += 1
            out[b] += 1
            out[c] += 1
    return out


@settings(max_examples=60)
@given(small_graphs(min_n=2))
def test_stats_match_networkx(g):
    h = to_nx(g)
    s = compute_stats(g)
    assert triangle_counts(g) == brute_triangles(g)
    assert s.density == pytest.approx(nx.density(h))
    assert s.avg_cc == pytest.approx(nx.average_clustering(h))
    assert s.avg_degree == pytest.approx(2 * g.m / g.n)
    assert 0.0 <= s.avg_cc <= 1.0


def test_stats_single_vertex():
    g = Graph.from_edges([], labels=["x"])
    s = compute_stats(g)
    assert (s.nodes, s.edges, s.density) == (1, 0, 0.0)


def test_karate_diameter(karate):
    assert diameter(karate) == 5 == nx.diameter(to_nx(karate))


@settings(max_examples=60)
@given(small_graphs(min_n=1))
def test_diameter_is_lcc_eccentricity_max(g):
    h = to_nx(g)
    comp = max(nx.connected_components(h), key=lambda c: (len(c), -min(c)))
    assert diameter(g) == nx.diameter(h.subgraph(comp))


@given(small_graphs(min_n=1))
def test_components_and_distances(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    sizes = [len(c) for c in comps]
    assert sizes == sorted(sizes, reverse=True)
    h = to_nx(g)
    assert bfs_distances(g, [0]) == nx.single_source_shortest_path_length(h, 0)
    assert bfs_distances(g, [0], limit=2) == nx.single_source_shortest_path_length(h, 0, cutoff=2)


def test_khop(hop_graph):
    two = hop_graph.index_of("2")
    near = {hop_graph.labels[v] for v in khop_neighborhood(hop_graph, [two], 2)}
    assert near == {"0", "1", "2", "3", "4", "5", "6", "7", "9", "10"}


def test_bfs_unknown_vertex():
    g = load_graph(b"1 2\n")
    with pytest.raises(IndexError):
        bfs_distances(g, [7])

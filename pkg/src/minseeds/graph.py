"""Undirected simple graphs, edge-list ingestion and network statistics."""

from __future__ import annotations

import gzip
import io
import os
import re
from collections import deque
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Union

Source = Union[str, os.PathLike, BinaryIO, bytes]

_SPLIT = re.compile(r"[ \t]*,[ \t]*|[ \t]+")


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on dense vertex ids ``0..n-1``.

    ``adjacency[v]`` is the strictly increasing tuple of neighbours of ``v``
    and ``labels[v]`` the label the vertex carried in the source file.
    """

    n: int
    m: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield u, v

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    @property
    def _label_index(self) -> dict[str, int]:
        cache = self.__dict__.get("_label_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_cache", cache)
        return cache

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[object, object]], labels: Iterable[object] = ()) -> "Graph":
        """Build a graph from label pairs; self-loops and repeats are dropped.

        Extra ``labels`` may be given to include isolated vertices.
        """
        graph, _ = _build(((str(u), str(v)) for u, v in edges), [str(x) for x in labels])
        return graph


@dataclass
class LoadSummary:
    lines: int = 0
    edges_read: int = 0
    self_loops: int = 0
    duplicates: int = 0


def _sort_labels(labels: Iterable[str]) -> list[str]:
    labels = list(labels)
    try:
        return sorted(labels, key=int)
    except ValueError:
        return sorted(labels)


def _build(pairs: Iterable[tuple[str, str]], extra_labels: list[str] | None = None,
           summary: LoadSummary | None = None) -> tuple[Graph, LoadSummary]:
    summary = summary or LoadSummary()
    seen: set[frozenset[str]] = set()
    kept: list[tuple[str, str]] = []
    names: set[str] = set(extra_labels or ())
    for u, v in pairs:
        summary.edges_read += 1
        names.add(u)
        names.add(v)
        if u == v:
            summary.self_loops += 1
            continue
        key = frozenset((u, v))
        if key in seen:
            summary.duplicates += 1
            continue
        seen.add(key)
        kept.append((u, v))

    labels = _sort_labels(names)
    index = {lab: i for i, lab in enumerate(labels)}
    adj: list[list[int]] = [[] for _ in labels]
    for u, v in kept:
        a, b = index[u], index[v]
        adj[a].append(b)
        adj[b].append(a)
    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)
    return Graph(len(labels), len(kept), adjacency, tuple(labels)), summary


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        raw = source
    elif isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        opener = gzip.open if path.endswith(".gz") else open
        with opener(path, "rb") as fh:
            raw = fh.read()
    else:
        raw = source.read()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"input is not UTF-8 text ({exc.reason})") from None


def read_edgelist(source: Source, fmt: str = "edgelist") -> tuple[Graph, LoadSummary]:
    """Parse an edge list and return the graph plus a summary of dropped lines.

    ``fmt`` is ``"edgelist"`` (two tokens per line) or ``"mtx"``
    (MatrixMarket coordinate files: the first non-comment line holds the
    matrix dimensions and is skipped, any third weight column is ignored).
    Directed inputs are symmetrised.
    """
    if fmt not in ("edgelist", "mtx"):
        raise ValueError(f"unknown edge-list format {fmt!r}")
    text = _read_text(source)
    summary = LoadSummary()
    pairs: list[tuple[str, str]] = []
    header_pending = fmt == "mtx"
    for lineno, line in enumerate(text.splitlines(), start=1):
        summary.lines += 1
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        tokens = _SPLIT.split(stripped)
        if header_pending:
            header_pending = False
            continue
        if fmt == "mtx" and len(tokens) == 3:
            tokens = tokens[:2]
        if len(tokens) != 2 or not all(tokens):
            raise GraphFormatError(f"expected 2 tokens, found {len(tokens)}", lineno)
        pairs.append((tokens[0], tokens[1]))
    if not pairs:
        raise GraphFormatError("no edges")
    return _build(pairs, summary=summary)


def load_graph(source: Source, fmt: str = "edgelist") -> Graph:
    return read_edgelist(source, fmt)[0]


def write_edgelist(g: Graph, dest: str | os.PathLike | None = None) -> str:
    """Canonical ``"u v\\n"`` text with original labels, edges in dense-id order."""
    buf = io.StringIO()
    for u, v in g.edges():
        buf.write(f"{g.labels[u]} {g.labels[v]}\n")
    text = buf.getvalue()
    if dest is not None:
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


@dataclass(frozen=True)
class NetworkStats:
    nodes: int
    edges: int
    density: float
    avg_triangles: float
    avg_degree: float
    avg_cc: float

    # display precision of each field in reports
    PRECISION = {"density": 4, "avg_triangles": 4, "avg_degree": 3, "avg_cc": 3}

    def rounded(self) -> dict[str, float | int]:
        out: dict[str, float | int] = {"nodes": self.nodes, "edges": self.edges}
        for name, digits in self.PRECISION.items():
            out[name] = round(getattr(self, name), digits)
        return out


def triangle_counts(g: Graph) -> list[int]:
    """Number of triangles through each vertex."""
    adj_sets = [set(nbrs) for nbrs in g.adjacency]
    counts = [0] * g.n
    for u in range(g.n):
        su = adj_sets[u]
        for v in g.adjacency[u]:
            if v <= u:
                continue
            for w in adj_sets[v] & su:
                if w > v:
                    counts[u] += 1
                    counts[v] += 1
                    counts[w] += 1
    return counts


def compute_stats(g: Graph) -> NetworkStats:
    """Summary statistics. A single-vertex graph has density 0."""
    if g.n < 1:
        raise ValueError("graph has no vertices")
    n, m = g.n, g.m
    tri = triangle_counts(g)
    cc_sum = 0.0
    for v in range(n):
        d = g.degree(v)
        if d >= 2:
            cc_sum += 2.0 * tri[v] / (d * (d - 1))
    density = 2.0 * m / (n * (n - 1)) if n >= 2 else 0.0
    return NetworkStats(
        nodes=n,
        edges=m,
        density=density,
        avg_triangles=sum(tri) / n,
        avg_degree=2.0 * m / n,
        avg_cc=cc_sum / n,
    )


def bfs_distances(g: Graph, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
    """Hop distance from the nearest source, optionally truncated at ``limit``."""
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if not 0 <= s < g.n:
            raise IndexError(f"vertex {s} out of range")
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    adjacency = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adjacency[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def khop_neighborhood(g: Graph, sources: Iterable[int], k: int) -> set[int]:
    if k < 0:
        raise ValueError("k must be non-negative")
    return set(bfs_distances(g, sources, limit=k))


def connected_components(g: Graph) -> list[list[int]]:
    """Components sorted by decreasing size, ties by smallest member id."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        i = 0
        while i < len(comp):
            for w in g.adjacency[comp[i]]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
            i += 1
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def largest_component(g: Graph) -> list[int]:
    return connected_components(g)[0]


def eccentricity(g: Graph, v: int) -> int:
    return max(bfs_distances(g, [v]).values())


def diameter(g: Graph) -> int:
    """Largest eccentricity within the largest connected component."""
    if g.n < 1:
        raise ValueError("graph has no vertices")
    comp = largest_component(g)
    adjacency = g.adjacency
    dist = [-1] * g.n
    best = 0
    for s in comp:
        # plain list BFS; reset only the touched entries
        dist[s] = 0
        order = [s]
        i = 0
        while i < len(order):
            u = order[i]
            du = dist[u] + 1
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = du
                    order.append(w)
            i += 1
        ecc = dist[order[-1]]
        if ecc > best:
            best = ecc
        for u in order:
            dist[u] = -1
    return best

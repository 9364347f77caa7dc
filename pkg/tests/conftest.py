import random

import pytest
from hypothesis import strategies as st

from minseeds.bench import data_path
from minseeds.diffusion import ThresholdConfig
from minseeds.graph import Graph, load_graph

# 14-vertex pruning example
PRUNE_EDGES = (
    [(0, y) for y in (2, 4)]
    + [(1, y) for y in (2, 5, 3, 7)]
    + [(2, y) for y in (3, 5, 7, 4)]
    + [(3, y) for y in (7, 9, 10, 6)]
    + [(5, y) for y in (10, 9, 4, 8)]
    + [(9, y) for y in (13, 11, 12)]
)

# same layout without the 1-5 and 2-5 edges, used for the two-hop pick
HOP_EDGES = (
    [(0, y) for y in (2, 4)]
    + [(1, y) for y in (2, 3, 7)]
    + [(2, y) for y in (3, 7, 4)]
    + [(3, y) for y in (7, 9, 10, 6)]
    + [(5, y) for y in (10, 9, 4, 8)]
    + [(9, y) for y in (13, 11, 12)]
)

DEFAULT_CFG = ThresholdConfig(0.4, 0.6, 3)


def pytest_addoption(parser):
    parser.addoption("--run-extended", action="store_true", default=False,
                     help="run the long full-dataset reproduction")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended"):
        return
    skip = pytest.mark.skip(reason="extended suite; pass --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def graph_of(edges, n=None):
    labels = range(n) if n is not None else ()
    return Graph.from_edges(edges, labels=labels)


@pytest.fixture(scope="session")
def prune_graph():
    return graph_of(PRUNE_EDGES)


@pytest.fixture(scope="session")
def hop_graph():
    return graph_of(HOP_EDGES)


@pytest.fixture(scope="session")
def karate():
    return load_graph(data_path("karate.txt"))


def ids(g, *labels):
    return [g.index_of(str(x)) for x in labels]


def random_graph(rng: random.Random, n: int, prob: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]
    return graph_of(edges, n)


@st.composite
def small_graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_of([e for e, keep in zip(pairs, mask) if keep], n)


configs = st.sampled_from([
    ThresholdConfig(0.4, 0.6, 1),
    ThresholdConfig(0.4, 0.6, 2),
    ThresholdConfig(0.4, 0.6, 3),
    ThresholdConfig(0.4, 0.6, None),
    ThresholdConfig(0.5, 0.5, 2),
    ThresholdConfig(0.5, 0.5, None),
    ThresholdConfig(1.0, 1.0, 1),
    ThresholdConfig(1.0, 1.0, None),
    ThresholdConfig(0.2, 0.9, 2),
])


# one summary line per acceptance criterion
_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "setup" and report.skipped:
        _ACCEPTANCE[label] = ("SKIP", str(report.longrepr[2]) if isinstance(report.longrepr, tuple) else "")
    elif report.when == "call":
        if report.skipped:
            reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else ""
            _ACCEPTANCE[label] = ("SKIP", str(reason).removeprefix("Skipped: "))
        else:
            note = getattr(item, "acceptance_note", "")
            if report.failed:
                note = note or str(report.longrepr).strip().splitlines()[-1]
            _ACCEPTANCE[label] = ("PASS" if report.passed else "FAIL", note)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: (int(s.split()[0]), s)):
        status, note = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{status:4}  {label}" + (f"  -- {note}" if note else ""))

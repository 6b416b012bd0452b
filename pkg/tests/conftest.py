import sys
from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from snarkforge import named  # noqa: E402
from snarkforge.graph import make_graph  # noqa: E402
from snarkforge.io import read_graph6  # noqa: E402

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def corpus():
    """K4, prism, Petersen and every bridgeless connected cubic graph on at most 12 vertices."""
    graphs = [("petersen", named.petersen()), ("k4", named.k4()), ("prism", named.prism())]
    lines = (DATA / "cubic_upto12.g6").read_text().split()
    for i, G in enumerate(read_graph6("\n".join(lines))):
        graphs.append((f"g{G.num_vertices()}_{i}", G))
    return tuple(graphs)


def from_nx(g: nx.Graph):
    pairs = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    return make_graph([str(v) for v in sorted(g.nodes())], [(str(u), str(v)) for u, v in pairs])


@st.composite
def cubic_graphs(draw, sizes=(4, 6, 8, 10), bridgeless=False):
    """Random simple connected cubic graphs, optionally bridgeless."""
    n = draw(st.sampled_from(sizes))
    seed = draw(st.integers(0, 10_000))
    for attempt in range(50):
        g = nx.random_regular_graph(3, n, seed=seed + attempt)
        if nx.is_connected(g) and (not bridgeless or not nx.has_bridges(g)):
            return from_nx(g)
    return named.k4()


@pytest.fixture
def petersen():
    return named.petersen()


@pytest.fixture
def k4():
    return named.k4()


@pytest.fixture
def prism():
    return named.prism()


# criterion number -> summary line, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

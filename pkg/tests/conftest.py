import numpy as np
import pytest

from graph_uncertainty import GraphBasis, complete_graph, cycle_graph, path_graph, random_connected_graph

CORPUS_SIZES = range(3, 17)
RANDOM_SEEDS = range(20)


def corpus_graphs():
    """P_N, C_N, K_N for 3 <= N <= 16 plus 20 seeded random connected graphs."""
    out = []
    for n in CORPUS_SIZES:
        out.append((f"P{n}", path_graph(n)))
        out.append((f"C{n}", cycle_graph(n)))
        out.append((f"K{n}", complete_graph(n)))
    for seed in RANDOM_SEEDS:
        rng = np.random.default_rng(1000 + seed)
        n = int(rng.integers(3, 17))
        out.append((f"R{seed}n{n}", random_connected_graph(n, rng)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return [(name, GraphBasis(g)) for name, g in corpus_graphs()]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])

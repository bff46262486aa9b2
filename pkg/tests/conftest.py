import os
from pathlib import Path

import numpy as np
import pytest

from hoaxnet.assignment import AgentClass, ClassAssignment
from hoaxnet.communities import Partition, fluid_communities, load_partition, save_partition
from hoaxnet.graph import Network, load_edge_list

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
CANONICAL_CLUSTER_SEED = 2023

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            outcome = "PASS"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            outcome = "SKIP"
        else:
            outcome = "FAIL"
        _criteria[number] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {title}: {outcome}")


def manual_assignment(class_of) -> ClassAssignment:
    """Class assignment for hand-built graphs (no degree-based selection)."""
    class_of = np.asarray(class_of, dtype=np.int8)
    empty = np.empty(0, dtype=np.int64)
    return ClassAssignment(
        class_of,
        None,
        np.flatnonzero(class_of == AgentClass.INFLUENCER),
        empty,
        np.flatnonzero(class_of == AgentClass.BOT_B),
        np.flatnonzero(class_of == AgentClass.BOT_F),
    )


@pytest.fixture
def path3() -> Network:
    return Network.from_edges([(0, 1), (1, 2)])


@pytest.fixture
def two_cliques() -> Network:
    return Network.from_edges([(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


@pytest.fixture(scope="session")
def small_world() -> tuple[Network, Partition]:
    """A connected 300-node graph with a 4-way partition, for fast end-to-end runs."""
    rng = np.random.default_rng(7)
    n = 300
    edges = {(i, (i + 1) % n) for i in range(n)}
    while len(edges) < 2400:
        a, b = (int(x) for x in rng.integers(0, n, 2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    net = Network.from_edges(sorted(edges))
    return net, fluid_communities(net, 4, seed=11)


def _facebook_path() -> Path:
    return Path(os.environ.get("HOAXNET_GRAPH", DATA / "facebook_combined.txt"))


@pytest.fixture(scope="session")
def facebook() -> Network:
    path = _facebook_path()
    if not path.exists():
        pytest.fail(
            f"ego-Facebook edge list not found at {path}; run scripts/fetch_facebook.py "
            "or point HOAXNET_GRAPH at facebook_combined.txt",
            pytrace=False,
        )
    return load_edge_list(path)


@pytest.fixture(scope="session")
def facebook_partition(facebook: Network, tmp_path_factory) -> Partition:
    """The committed k=8 partition if present, else one clustered with the canonical seed."""
    path = Path(os.environ.get("HOAXNET_PARTITION", DATA / "facebook_k8_partition.csv"))
    if path.exists():
        return load_partition(path, node_count=facebook.node_count)
    part = fluid_communities(facebook, 8, seed=CANONICAL_CLUSTER_SEED)
    save_partition(part, tmp_path_factory.mktemp("partition") / "facebook_k8_partition.csv")
    return part

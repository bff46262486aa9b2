import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hoaxnet.graph import EdgeListError, Network, dumps_edge_list, floor_share, load_edge_list, top_fraction_by_degree


def load(text):
    return load_edge_list(io.StringIO(text))


def test_path_graph():
    net = load("0 1\n1 2\n")
    assert net.node_count == 3 and net.edge_count == 2
    assert net.degree.tolist() == [1, 2, 1]


def test_comments_blank_lines_and_duplicates():
    net = load("# header\n\n5 7\n7 5\n5 7\n7\t9\n")
    assert net.node_count == 3 and net.edge_count == 2
    assert net.original_ids.tolist() == [5, 7, 9]
    assert net.edges == {(0, 1), (1, 2)}


def test_dense_remap_in_first_appearance_order():
    net = load("10 3\n3 7\n")
    assert net.original_ids.tolist() == [10, 3, 7]
    assert net.neighbors(1).tolist() == [0, 2]


@pytest.mark.parametrize("text,line", [("0 1\n1 x\n", 2), ("0 1 2\n", 1), ("0\n", 1), ("0 -1\n", 1)])
def test_malformed_lines_report_line_number(text, line):
    with pytest.raises(EdgeListError) as info:
        load(text)
    assert info.value.line == line and f"line {line}" in str(info.value)


def test_self_loop_rejected_with_line():
    with pytest.raises(EdgeListError, match="self-loop at line 2"):
        load("0 1\n1 1\n")


edge_lists = st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40)).filter(lambda e: e[0] != e[1]),
    min_size=1, max_size=120,
)


@given(edge_lists)
def test_invariants(pairs):
    net = load("".join(f"{a} {b}\n" for a, b in pairs))
    n = net.node_count
    adj = net.adjacency
    assert sorted(set(net.original_ids.tolist())) == sorted({x for e in pairs for x in e})
    for i in range(n):
        assert i not in adj[i]
        assert len(adj[i]) == len(set(adj[i])) == net.degree[i]
        for j in adj[i]:
            assert i in adj[j]
    assert net.degree.sum() == 2 * net.edge_count
    assert net.edge_count == len({(min(a, b), max(a, b)) for a, b in pairs})


@given(edge_lists)
def test_round_trip(pairs):
    net = load("".join(f"{a} {b}\n" for a, b in pairs))
    again = load(dumps_edge_list(net))
    assert again.same_as(net)


def test_isolated_nodes_allowed():
    net = Network.from_edges([(0, 1)], node_count=4)
    assert net.degree.tolist() == [1, 1, 0, 0]
    assert not net.is_connected()


def test_top_fraction_zero():
    net = load("0 1\n1 2\n")
    assert top_fraction_by_degree(net, 0.0).size == 0


def test_star_center():
    star = Network.from_edges([(0, i) for i in range(1, 5)])
    # brute force: sort by (-degree, id), take floor(5*0.2)=1
    brute = sorted(range(5), key=lambda v: (-star.degree[v], v))[:1]
    assert top_fraction_by_degree(star, 0.2).tolist() == brute == [0]


def test_ties_break_by_ascending_id():
    cycle = Network.from_edges([(i, (i + 1) % 10) for i in range(10)])
    assert top_fraction_by_degree(cycle, 0.3).tolist() == [0, 1, 2]
    assert top_fraction_by_degree(cycle, 0.3, excluded=[1]).tolist() == [0, 2, 3]


def test_floor_share_is_decimal_exact():
    assert floor_share(100, 0.29) == 29
    assert floor_share(4039, 0.01) == 40
    assert floor_share(4039, 0.10) == 403


@given(edge_lists, st.floats(0, 1), st.sets(st.integers(0, 40), max_size=10))
def test_top_fraction_properties(pairs, fraction, excluded):
    net = load("".join(f"{a} {b}\n" for a, b in pairs))
    n = net.node_count
    excluded = {e for e in excluded if e < n}
    top = top_fraction_by_degree(net, fraction, excluded)
    chosen = set(top.tolist())
    assert not chosen & excluded
    assert len(chosen) == min(floor_share(n, fraction), n - len(excluded))
    rest = [v for v in range(n) if v not in chosen and v not in excluded]
    deg = net.degree
    for v in chosen:
        for w in rest:
            assert deg[v] > deg[w] or (deg[v] == deg[w] and v < w)

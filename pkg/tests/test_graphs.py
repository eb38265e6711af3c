from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespan.graphs import (
    Graph,
    build_graph,
    from_edge_list_text,
    simplify,
    to_edge_list_text,
    validate_cycle,
)


def test_build_simple_undirected():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.n == 4
    assert g.num_edges == 4
    assert not g.directed
    assert g.is_simple()
    assert g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    assert list(g.degrees()) == [2, 2, 2, 2]


def test_build_rejects_bad_edges():
    with pytest.raises(ValueError):
        build_graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        build_graph(3, [(-1, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(1, 1)])  # loop in a simple graph
    with pytest.raises(ValueError):
        build_graph(3, [(0, 1), (1, 0)])  # duplicate undirected edge


def test_directed_edges_are_ordered():
    g = build_graph(3, [(0, 1), (1, 0)], directed=True)
    assert g.num_edges == 2
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    out_deg, in_deg = g.degrees()
    assert list(out_deg) == [1, 1, 0]
    assert list(in_deg) == [1, 1, 0]
    assert g.in_neighbors(0) == {1: 1}


def test_multigraph_multiplicity_and_loop_degree():
    g = build_graph(3, [(0, 1), (0, 1), (2, 2)], multigraph=True)
    assert g.multiplicity(0, 1) == 2
    assert g.multiplicity(1, 0) == 2
    # a loop contributes 2 to its endpoint's degree
    assert list(g.degrees()) == [2, 2, 2]
    assert not g.is_simple()


def test_neighbors_view_is_copy():
    g = build_graph(3, [(0, 1)])
    nbrs = g.neighbors(0)
    nbrs[2] = 99
    assert g.neighbors(0) == {1: 1}


def test_validate_cycle_accepts_true_cycles():
    g = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert validate_cycle(g, [0, 1, 2, 3, 4])
    assert validate_cycle(g, [2, 3, 4, 0, 1])
    assert validate_cycle(g, [0, 4, 3, 2, 1])  # reversal fine when undirected


def test_validate_cycle_rejects_junk():
    g = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert not validate_cycle(g, [0, 1, 2])  # chord missing
    assert not validate_cycle(g, [0, 1, 1, 2])  # repeated vertex
    assert not validate_cycle(g, [0, 1])  # too short for a simple graph
    d = build_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    assert validate_cycle(d, [0, 1, 2])
    assert not validate_cycle(d, [0, 2, 1])  # against the arcs


def test_simplify_counts():
    g = build_graph(4, [(0, 1), (0, 1), (1, 1), (2, 3)], multigraph=True)
    s, rep = simplify(g)
    assert s.is_simple()
    assert s.num_edges == 2
    assert rep.loops_removed == 1
    assert rep.parallel_surplus == 1
    s2, rep2 = simplify(s)
    assert rep2.loops_removed == 0 and rep2.parallel_surplus == 0
    assert s2.edge_list() == s.edge_list()


def test_edge_list_text_round_trip_known():
    g = build_graph(4, [(0, 1), (2, 3)])
    text = to_edge_list_text(g)
    assert text.splitlines()[0] == "4 2 U"
    h = from_edge_list_text(text)
    assert h.n == g.n and h.edge_list() == g.edge_list()
    assert to_edge_list_text(h) == text


def test_edge_list_text_rejects_malformed():
    with pytest.raises(ValueError):
        from_edge_list_text("")
    with pytest.raises(ValueError):
        from_edge_list_text("3 1 X\n0 1\n")
    with pytest.raises(ValueError):
        from_edge_list_text("3 2 U\n0 1\n")  # promised 2 edges, gave 1


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    directed = draw(st.booleans())
    multigraph = draw(st.booleans())
    if directed:
        pool = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if multigraph:
        pool = pool + [(v, v) for v in range(n)]
        edges = draw(st.lists(st.sampled_from(pool), max_size=30)) if pool else []
    else:
        edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=30)) if pool else []
    return build_graph(n, edges, directed=directed, multigraph=multigraph)


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_text_round_trip(g: Graph):
    assert from_edge_list_text(to_edge_list_text(g)).edge_list() == g.edge_list()


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_degree_sum_is_twice_edges(g: Graph):
    if g.directed:
        out_deg, in_deg = g.degrees()
        assert int(np.sum(out_deg)) == g.num_edges
        assert int(np.sum(in_deg)) == g.num_edges
    else:
        assert int(np.sum(g.degrees())) == 2 * g.num_edges


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_edge_list_sorted_and_consistent(g: Graph):
    el = g.edge_list()
    assert el == sorted(el)
    assert len(el) == g.num_edges
    for u, v in el:
        assert g.has_edge(u, v)

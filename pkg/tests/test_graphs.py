"""Tests for labeled graphs, generators and measurements."""

import math

import pytest

from locality_lab.errors import SamplingBudgetExhausted, ScaleGuardError
from locality_lab.graphs.core import GraphSpec, LabeledGraph
from locality_lab.graphs.generators import (
    cycle_graph,
    disjoint_union,
    double_cover,
    enumerate_graphs,
    generate,
    pad_isolated,
    random_regular_graph,
    sample_high_girth_regular,
    two_copies,
    two_path_graph,
)
from locality_lab.graphs.measures import (
    connected_components,
    distances_from,
    girth,
    induces_connected,
    is_bipartite,
)


def test_from_edges_sorts_adjacency():
    """Adjacency lists come out sorted and symmetric."""
    g = LabeledGraph.from_edges(4, [(2, 0), (0, 1), (3, 0)])
    assert g.neighbors(0) == (1, 2, 3)
    assert g.neighbors(3) == (0,)
    assert g.delta == 3
    assert g.num_edges == 3
    assert g.edges() == [(0, 1), (0, 2), (0, 3)]


def test_degree_above_bound_rejected():
    with pytest.raises(ValueError):
        LabeledGraph.from_edges(3, [(0, 1), (0, 2)], delta=1)


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        LabeledGraph(n=2, adjacency=((0,), ()), delta=1)


def test_asymmetric_adjacency_rejected():
    with pytest.raises(ValueError):
        LabeledGraph(n=2, adjacency=((1,), ()), delta=1)


def test_relabel_preserves_structure(cycle8):
    mapping = [3, 0, 6, 1, 7, 2, 5, 4]
    h = cycle8.relabel(mapping)
    for u, v in cycle8.edges():
        assert mapping[v] in h.neighbors(mapping[u])
    assert h.num_edges == cycle8.num_edges
    assert h.delta == cycle8.delta


def test_relabel_requires_bijection(cycle8):
    with pytest.raises(ValueError):
        cycle8.relabel([0] * 8)


def test_cycle_girth_and_bipartite():
    assert girth(cycle_graph(9)) == 9
    assert not is_bipartite(cycle_graph(9))
    assert is_bipartite(cycle_graph(8))


def test_forest_girth_is_infinite(path5):
    assert math.isinf(girth(path5))


def test_two_copies_and_double_cover(cycle9):
    """Copies of C9 stay two odd cycles; the cover is one bipartite 18-cycle."""
    a = two_copies(cycle9)
    b = double_cover(cycle9)
    assert a.n == b.n == 18
    assert len(connected_components(a)) == 2
    assert len(connected_components(b)) == 1
    assert is_bipartite(b)
    assert girth(b) == 18
    assert b.neighbors(0) == (10, 17)


def test_double_cover_of_even_cycle_splits(cycle8):
    assert len(connected_components(double_cover(cycle8))) == 2


def test_disjoint_union_shifts_ids():
    g = disjoint_union(cycle_graph(3), cycle_graph(4))
    assert g.n == 7
    assert g.neighbors(3) == (4, 6)


def test_pad_isolated(cycle8):
    g = pad_isolated(cycle8, 12)
    assert g.n == 12
    assert g.degree(11) == 0
    with pytest.raises(ValueError):
        pad_isolated(cycle8, 5)


def test_two_path_placement():
    g = two_path_graph(10, seed=5)
    degrees = sorted(g.degree(v) for v in range(10))
    assert degrees == [0, 0, 0, 0, 1, 1, 1, 1, 2, 2]


def test_two_path_explicit_placement():
    g = two_path_graph(8, paths=((2, 3, 4), (5, 6, 7)))
    assert g.neighbors(3) == (2, 4)
    assert g.neighbors(6) == (5, 7)
    with pytest.raises(ValueError):
        two_path_graph(8, paths=((0, 1, 2), (2, 3, 4)))


def test_random_regular_is_regular_and_seeded():
    g = random_regular_graph(12, 3, seed=4)
    assert all(g.degree(v) == 3 for v in range(12))
    assert random_regular_graph(12, 3, seed=4) == g


def test_random_regular_odd_product_rejected():
    with pytest.raises(ValueError):
        random_regular_graph(7, 3)


def test_high_girth_sample_meets_girth():
    sample = sample_high_girth_regular(20, 3, 5, seed=1)
    assert girth(sample.graph) >= 5
    assert sample.rejections >= 0


def test_high_girth_budget_exhausted():
    """K4 is the only 3-regular graph on 4 vertices and has girth 3."""
    with pytest.raises(SamplingBudgetExhausted):
        sample_high_girth_regular(4, 3, 5, budget=20)


def test_enumerate_graphs_counts():
    """Labeled graphs on [n] under a degree bound."""
    assert len(list(enumerate_graphs(2, 1))) == 2
    # every graph on [3] has max degree <= 2
    assert len(list(enumerate_graphs(3, 2))) == 8
    # max degree 1 on [3]: empty or one of three edges
    assert len(list(enumerate_graphs(3, 1))) == 4


def test_enumerate_graphs_guard():
    with pytest.raises(ScaleGuardError):
        list(enumerate_graphs(7, 2))


def test_distances_and_connectivity(cycle8):
    dist = distances_from(cycle8, 0, limit=2)
    assert dist == {0: 0, 1: 1, 7: 1, 2: 2, 6: 2}
    assert induces_connected(cycle8, [0, 1, 2])
    assert not induces_connected(cycle8, [0, 2])
    assert not induces_connected(cycle8, [])


@pytest.mark.parametrize(
    "text",
    ["cycle:8", "path:5", "two-path:10:3", "random-regular:10:3:7", "double-cover:cycle:3", "pad:12:cycle:5", "union:cycle:3+cycle:4"],
)
def test_spec_round_trips_through_text(text):
    spec = GraphSpec.parse(text)
    assert GraphSpec.parse(spec.to_string()) == spec


def test_spec_generation():
    assert generate(GraphSpec.parse("double-cover:cycle:3")) == double_cover(cycle_graph(3))
    assert generate(GraphSpec.parse("pad:12:cycle:5")).n == 12


@pytest.mark.parametrize("text", ["", "cycle:2", "cycle:x", "moebius:8", "random-regular:7:3"])
def test_spec_rejects_malformed(text):
    with pytest.raises(ValueError):
        GraphSpec.parse(text)

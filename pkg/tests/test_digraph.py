import networkx as nx
import pytest
from hypothesis import given

from dichroma.digraph import (
    Digraph,
    GraphFormatError,
    UndirectedGraph,
    VertexColoring,
    acyclic_check,
    bipartition,
    complete_symmetric,
    cycle_graph,
    dicycle,
    dipath,
    induced_subdigraph,
    is_acyclic,
    is_oriented,
    make_family,
    max_degree_bound,
    path_graph,
    strong_components,
    symmetric_of,
    transitive_tournament,
    underlying,
)
from dichroma.products import product

from conftest import digraphs, graphs, to_nx


def test_family_examples():
    assert dipath(3).arcs == {(0, 1), (1, 2)}
    assert dicycle(2).arcs == {(0, 1), (1, 0)}
    assert len(complete_symmetric(3).arcs) == 6
    assert transitive_tournament(4).arcs == {(i, j) for i in range(4) for j in range(i + 1, 4)}
    assert dicycle(5).arcs == {(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)}


@pytest.mark.parametrize("kind,n,p", [("dicycle", 1, 0.5), ("dipath", 0, 0.5),
                                       ("erdos_renyi_digraph", 4, 1.5),
                                       ("random_orientation", 4, -0.1), ("petersen", 4, 0.5)])
def test_family_errors(kind, n, p):
    with pytest.raises(ValueError):
        make_family(kind, n, p)


@pytest.mark.parametrize("kind", ["erdos_renyi_digraph", "random_orientation"])
def test_random_families_are_seed_stable(kind):
    a = make_family(kind, 12, 0.4, seed=7)
    b = make_family(kind, 12, 0.4, seed=7)
    assert a == b
    assert make_family(kind, 12, 0.4, seed=8) != a


def test_random_orientation_is_oriented():
    for seed in range(20):
        assert is_oriented(make_family("random_orientation", 10, 0.9, seed=seed))


def test_frozen_random_stream():
    # pins the CPython Mersenne Twister stream behind the generators
    assert make_family("erdos_renyi_digraph", 5, 0.3, seed=1).sorted_arcs() == [
        (0, 1), (0, 4), (2, 0), (2, 1), (3, 1), (4, 0), (4, 3)]
    assert make_family("random_orientation", 6, 0.5, seed=3).sorted_arcs() == [
        (0, 4), (1, 0), (1, 2), (2, 0), (3, 2), (4, 1), (5, 1), (5, 4)]


def test_type_invariants():
    with pytest.raises(GraphFormatError):
        Digraph(3, [(1, 1)])
    with pytest.raises(GraphFormatError):
        Digraph(3, [(0, 3)])
    with pytest.raises(GraphFormatError):
        UndirectedGraph(2, [(0, 0)])
    d = Digraph(2, [(0, 1), (0, 1), (1, 0)])
    assert len(d.arcs) == 2  # set semantics; 2-cycles allowed
    with pytest.raises(ValueError):
        VertexColoring([1, 3], 2)
    with pytest.raises(ValueError):
        VertexColoring([0, 1])


def test_symmetric_and_underlying_examples():
    assert symmetric_of(UndirectedGraph(3)).arcs == frozenset()
    assert symmetric_of(UndirectedGraph(2, [(0, 1)])).arcs == {(0, 1), (1, 0)}
    assert underlying(dicycle(3)) == cycle_graph(3)
    assert underlying(dipath(4)) == path_graph(4)


@given(graphs())
def test_symmetric_round_trip(g):
    d = symmetric_of(g)
    assert len(d.arcs) == 2 * len(g.edges)
    assert underlying(d) == g


@given(digraphs(max_n=7))
def test_underlying_edges(d):
    g = underlying(d)
    for u in range(d.n):
        for v in range(u + 1, d.n):
            assert g.has_edge(u, v) == (d.has_arc(u, v) or d.has_arc(v, u))


def test_is_oriented_examples():
    assert is_oriented(transitive_tournament(4))
    assert not is_oriented(complete_symmetric(2))
    assert not is_oriented(dicycle(2))
    assert is_oriented(dicycle(3))


def test_strong_components_examples():
    assert sorted(strong_components(dipath(3))) == [[0], [1], [2]]
    assert strong_components(dicycle(5)) == [[0, 1, 2, 3, 4]]
    d, _ = product("direct", dicycle(2), dicycle(3))
    comps = strong_components(d)
    for comp in comps:
        sub, _ = induced_subdigraph(d, comp)
        assert all(sub.out_degree(v) == 1 and sub.in_degree(v) == 1 for v in range(sub.n))


def test_strong_components_reverse_topological():
    # 0 -> 1 -> 2 with 2 a sink: sinks come first
    assert strong_components(dipath(3)) == [[2], [1], [0]]


@given(digraphs(max_n=9))
def test_strong_components_match_networkx(d):
    comps = strong_components(d)
    assert sorted(v for c in comps for v in c) == list(range(d.n))
    want = sorted(sorted(c) for c in nx.strongly_connected_components(to_nx(d)))
    assert sorted(comps) == want
    # reverse topological: no arc from an earlier block into a later one
    pos = {v: i for i, c in enumerate(comps) for v in c}
    assert all(pos[u] >= pos[v] for u, v in d.arcs)
    assert strong_components(d) == comps


def test_acyclic_check_examples():
    t = transitive_tournament(5)
    assert acyclic_check(t) == [0, 1, 2, 3, 4]
    assert acyclic_check(t, {4, 1, 3}) == [1, 3, 4]
    assert acyclic_check(dicycle(3)) is None
    for v in range(4):
        assert acyclic_check(dicycle(4), set(range(4)) - {v}) is not None


@given(digraphs(max_n=8))
def test_acyclic_check_iff_singleton_components(d):
    order = acyclic_check(d)
    assert (order is not None) == all(len(c) == 1 for c in strong_components(d))
    assert (order is not None) == nx.is_directed_acyclic_graph(to_nx(d))
    if order is not None:
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in d.arcs)


def test_induced_subdigraph_examples():
    d = dicycle(4)
    sub, labels = induced_subdigraph(d, range(4))
    assert sub == d and labels == [0, 1, 2, 3]
    empty, labels = induced_subdigraph(d, [])
    assert empty.n == 0 and labels == []
    sub, labels = induced_subdigraph(d, {0, 1, 2})
    assert sub == dipath(3)


def test_bipartition_examples():
    assert bipartition(cycle_graph(4)) == ([0, 2], [1, 3])
    assert bipartition(cycle_graph(3)) is None
    assert bipartition(UndirectedGraph(2, [(0, 1)])) == ([0], [1])


@given(graphs())
def test_bipartition_matches_networkx(g):
    parts = bipartition(g)
    gx = nx.Graph()
    gx.add_nodes_from(range(g.n))
    gx.add_edges_from(g.edges)
    assert (parts is not None) == nx.is_bipartite(gx)
    if parts:
        a, b = map(set, parts)
        assert a | b == set(range(g.n)) and not a & b
        assert all((u in a) != (v in a) for u, v in g.edges)


def test_degree_bound():
    assert max_degree_bound(complete_symmetric(4)) == 4
    assert max_degree_bound(dicycle(7)) == 2
    assert max_degree_bound(Digraph(3)) == 1


@given(digraphs(max_n=8))
def test_is_acyclic_agrees(d):
    assert is_acyclic(d) == nx.is_directed_acyclic_graph(to_nx(d))

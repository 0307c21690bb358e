import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given

from dichroma.digraph import UndirectedGraph, complete_graph, cycle_graph, path_graph
from dichroma.exact import BudgetExceeded, SolveBudget, chromatic_exact
from dichroma.treewidth import (
    FORGET,
    INTRODUCE,
    InvalidDecomposition,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    dumps_nice,
    exact_treewidth_small,
    format_pace,
    heuristic_decomposition,
    make_nice,
    nice_decomposition,
    nice_from_parts,
    parse_pace,
    validate_decomposition,
    validate_nice,
)

from conftest import graphs

NICE_NODE_CONSTANT = 4


def naive_treewidth(g: UndirectedGraph) -> int:
    """Minimum over every elimination order of the largest eliminated degree."""
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        adj = {v: set() for v in range(g.n)}
        for u, v in g.edges:
            adj[u].add(v)
            adj[v].add(u)
        width = 0
        for v in order:
            nbrs = adj.pop(v)
            width = max(width, len(nbrs))
            for a in nbrs:
                adj[a].discard(v)
                adj[a] |= nbrs - {a}
        best = min(best, width)
    return best


def random_tree(n, rng):
    return UndirectedGraph(n, [(rng.randrange(v), v) for v in range(1, n)])


def test_validate_examples():
    g = path_graph(4)
    assert validate_decomposition(g, TreeDecomposition([frozenset(range(4))])) == (True, None)
    td = TreeDecomposition([frozenset({i, i + 1}) for i in range(3)], [(0, 1), (1, 2)])
    assert validate_decomposition(g, td)[0] and td.width == 1
    bad = TreeDecomposition([frozenset({0, 1}), frozenset({2, 3})], [(0, 1)])
    ok, report = validate_decomposition(g, bad)
    assert not ok and "condition 2" in report and "(1,2)" in report


def test_validate_other_conditions():
    g = path_graph(3)
    ok, report = validate_decomposition(g, TreeDecomposition([frozenset({0, 1})]))
    assert not ok and "2" in report
    split = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2}), frozenset({0})],
                              [(0, 1), (1, 2)])
    assert not validate_decomposition(g, split)[0]
    cyclic = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2}), frozenset({1})],
                               [(0, 1), (1, 2), (2, 0)])
    assert not validate_decomposition(g, cyclic)[0]


@pytest.mark.parametrize("strategy", ["min_fill", "min_degree"])
def test_heuristic_examples(strategy):
    rng = random.Random("trees")
    for n in range(2, 12):
        assert heuristic_decomposition(random_tree(n, rng), strategy).width == 1
    assert heuristic_decomposition(complete_graph(4), strategy).width == 3
    assert heuristic_decomposition(cycle_graph(5), strategy).width == 2


def test_exact_examples():
    assert exact_treewidth_small(complete_graph(5))[0] == 4
    assert exact_treewidth_small(cycle_graph(6))[0] == 2
    with pytest.raises(BudgetExceeded):
        exact_treewidth_small(complete_graph(12), SolveBudget(max_vertices=5))
    grid = UndirectedGraph(16, [(r * 4 + c, r * 4 + c + 1) for r in range(4) for c in range(3)]
                           + [(r * 4 + c, r * 4 + c + 4) for r in range(3) for c in range(4)])
    assert exact_treewidth_small(grid)[0] == 4
    with pytest.raises(BudgetExceeded):
        exact_treewidth_small(grid, SolveBudget(max_nodes_expanded=2))


@given(graphs(max_n=7))
def test_exact_matches_naive(g):
    w, td = exact_treewidth_small(g)
    assert validate_decomposition(g, td)[0] and td.width == w
    assert w == naive_treewidth(g)
    for strategy in ("min_fill", "min_degree"):
        td = heuristic_decomposition(g, strategy)
        assert validate_decomposition(g, td)[0] and td.width >= w


@pytest.mark.parametrize("n", range(3, 11))
def test_heuristic_tight_on_families(n):
    rng = random.Random(n)
    for g, want in ((random_tree(n, rng), 1), (cycle_graph(n), 2), (complete_graph(n), n - 1)):
        assert heuristic_decomposition(g).width == exact_treewidth_small(g)[0] == want


def test_heuristic_is_deterministic():
    g = UndirectedGraph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)])
    a, b = heuristic_decomposition(g), heuristic_decomposition(g)
    assert a.bags == b.bags and a.edges == b.edges


def test_nice_triangle_chain():
    nd = make_nice(TreeDecomposition([frozenset({0, 1, 2})]), complete_graph(3))
    kinds = [nd.nodes[t].kind for t in nd.post_order()]
    assert kinds == [LEAF, INTRODUCE, INTRODUCE, FORGET, FORGET, FORGET]
    assert nd.width == 2 and nd.nodes[nd.root].bag == ()


def _check_nice(g, td):
    nd = make_nice(td, g)
    assert validate_nice(nd, g) == (True, None)
    assert validate_decomposition(g, nd.as_tree_decomposition())[0]
    assert nd.width == td.width
    assert len(nd.nodes) <= NICE_NODE_CONSTANT * max(td.width, 1) * max(g.n, 1)
    for node in nd.nodes:
        if node.kind == LEAF:
            assert len(node.bag) == 1
    assert sorted(nd.forget_order()) == list(range(g.n))
    return nd


@given(graphs(max_n=10))
def test_make_nice_invariants(g):
    _check_nice(g, heuristic_decomposition(g))


def test_make_nice_on_random_graphs():
    rng = random.Random("nice")
    for _ in range(100):
        n = rng.randint(1, 20)
        g = UndirectedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25])
        _check_nice(g, heuristic_decomposition(g, rng.choice(["min_fill", "min_degree"])))


def test_make_nice_rejects_invalid():
    with pytest.raises(InvalidDecomposition):
        make_nice(TreeDecomposition([frozenset({0, 1})]), path_graph(3))


def test_validate_nice_catches_bad_kind():
    g = path_graph(2)
    nd = nice_decomposition(g)
    nodes = list(nd.nodes)
    leaf = next(t for t, x in enumerate(nodes) if x.kind == LEAF)
    nodes[leaf] = type(nodes[leaf])(FORGET, nodes[leaf].bag, None, ())
    assert not validate_nice(NiceTreeDecomposition(nodes, nd.root), g)[0]


@given(graphs(max_n=8))
def test_chromatic_at_most_width_plus_one(g):
    w, _ = exact_treewidth_small(g)
    assert chromatic_exact(g)[0] <= w + 1
    gx = nx.Graph(list(g.edges))
    gx.add_nodes_from(range(g.n))
    assert w <= nx.algorithms.approximation.treewidth_min_fill_in(gx)[0]


@given(graphs(max_n=9))
def test_pace_round_trip(g):
    td = heuristic_decomposition(g)
    text = format_pace(td, g.n)
    back, n = parse_pace(text)
    assert n == g.n and back.bags == td.bags and back.edges == td.edges
    nd = make_nice(td, g)
    pace, kinds = dumps_nice(nd, g.n)
    again = nice_from_parts(parse_pace(pace)[0], json.loads(kinds))
    assert again == nd


def test_pace_format_is_one_based():
    td = TreeDecomposition([frozenset({0, 1}), frozenset({1, 2})], [(0, 1)])
    assert format_pace(td, 3) == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"


@pytest.mark.parametrize("text", ["b 1 1\n", "s td 2 2 3\nb 1 1 2\n", "s xx 1 1 1\nb 1 1\n"])
def test_pace_errors(text):
    with pytest.raises(InvalidDecomposition):
        parse_pace(text)

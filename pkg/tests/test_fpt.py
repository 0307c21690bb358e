import csv

import pytest
from hypothesis import given, strategies as st

from dichroma.digraph import (
    Digraph,
    UndirectedGraph,
    complete_symmetric,
    cycle_graph,
    dicycle,
    dipath,
    symmetric_of,
    transitive_tournament,
    underlying,
)
from dichroma.exact import dichromatic_exact, verify_certificate
from dichroma.fpt import (
    DPTable,
    Representation,
    StateBudgetExceeded,
    dp_forget,
    dp_introduce,
    dp_join,
    dp_leaf,
    fpt_decide,
    fpt_dichromatic,
    is_feasible,
    minimal_representation,
    reconstruction_path,
    run_dp,
    meets_state_invariants,
    state_bound,
    transitive_closure,
    write_table_csv,
)
from dichroma.fpt_dense import true_tables
from dichroma.products import product
from dichroma.treewidth import (
    JOIN,
    InvalidDecomposition,
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
    nice_decomposition,
)

from conftest import digraphs


def rep(bag, *arcs):
    return Representation(tuple(bag), frozenset(arcs))


def rows_of(bag, *arcs):
    return rep(bag, *arcs).rows()


def test_transitive_closure_examples():
    h = rep((0, 1, 2), (0, 1), (1, 2))
    assert transitive_closure(h) == rep((0, 1, 2), (0, 1), (1, 2), (0, 2))
    t = rep((0, 1, 2), (0, 1), (1, 2), (0, 2))
    assert transitive_closure(t) == t and t.is_transitive()
    assert transitive_closure(rep((0, 1))) == rep((0, 1))


@given(digraphs(max_n=6))
def test_closure_is_idempotent(d):
    h = rep(range(d.n), *d.arcs)
    once = transitive_closure(h)
    assert transitive_closure(once) == once
    assert h.arcs <= once.arcs


def test_representation_rejects_foreign_arcs():
    with pytest.raises(ValueError):
        rep((0, 1), (0, 2))
    with pytest.raises(ValueError):
        rep((0, 1), (1, 1))


def test_minimal_representation_examples():
    path = dipath(3)
    assert minimal_representation(path, (0, 1, 2), (1, 2, 3)).arcs == frozenset()
    assert minimal_representation(path, (0, 1, 2), (1, 1, 1)) == rep((0, 1, 2), (0, 1), (1, 2), (0, 2))
    bad = minimal_representation(dicycle(2), (0, 1), (1, 1))
    assert not bad.is_acyclic()
    assert not meets_state_invariants(dicycle(2), (0, 1), (1, 1), bad.rows())


@pytest.mark.parametrize("k", [1, 3])
def test_leaf(k):
    t = dp_leaf(0, (4,), k)
    assert len(t) == k
    assert all(not r.arcs for _, r in t.representations())
    assert len(dp_leaf(0, (4,), k, first=True)) == 1


def _table(bag, states):
    return DPTable(0, tuple(bag), {s: None for s in states})


def test_introduce_closing_cycle_is_dropped():
    # 2 -> 3 -> 4 in G, and below the bag {2, 4} the color-1 class already
    # has a path from 4 back to 2
    G = Digraph(5, [(2, 3), (3, 4)])
    child = _table((2, 4), [((1, 1), rows_of((2, 4), (4, 2)))])
    out = dp_introduce(1, (2, 3, 4), 3, child, G, 2)
    assert [key[0] for key in out.states] == [(1, 2, 1)]


def test_introduce_without_monochromatic_neighbours():
    G = Digraph(3, [(0, 1), (1, 2)])
    child = _table((0, 2), [((1, 2), rows_of((0, 2)))])
    out = dp_introduce(1, (0, 1, 2), 1, child, G, 3)
    assert ((1, 3, 2), (0, 0, 0)) in out.states


def test_introduce_all_one_color_on_triangle():
    d = dicycle(3)
    t = dp_leaf(0, (0,), 1)
    t = dp_introduce(1, (0, 1), 1, t, d, 1)
    assert ((1, 1), rows_of((0, 1), (0, 1))) in t.states
    t = dp_introduce(2, (0, 1, 2), 2, t, d, 1)
    assert len(t) == 0


def test_forget_examples():
    # 0 -> 1 -> 2 monochromatic: forgetting 1 keeps 0 -> 2
    child = _table((0, 1, 2), [((1, 1, 1), rows_of((0, 1, 2), (0, 1), (1, 2), (0, 2))),
                               ((1, 2, 1), rows_of((0, 1, 2)))])
    out = dp_forget(1, (0, 2), 1, child)
    assert ((1, 1), rows_of((0, 2), (0, 2))) in out.states
    assert ((1, 1), rows_of((0, 2))) in out.states
    # two child states differing only in the forgotten color merge
    child = _table((0, 1), [((1, 1), (0, 0)), ((1, 2), (0, 0))])
    out = dp_forget(1, (0,), 1, child)
    assert list(out.states) == [((1,), (0,))]
    assert out.states[((1,), (0,))] == ((1, 1), (0, 0))  # first provenance, in key order


def test_join_examples():
    bag = (0, 1, 2)
    ab = rows_of(bag, (0, 1))
    left = _table(bag, [((1, 1, 1), ab)])
    assert dp_join(2, bag, left, left).states.keys() == {((1, 1, 1), ab)}
    ba = _table(bag, [((1, 1, 1), rows_of(bag, (1, 0)))])
    assert len(dp_join(2, bag, left, ba)) == 0
    bc = _table(bag, [((1, 1, 1), rows_of(bag, (1, 2)))])
    out = dp_join(2, bag, left, bc)
    assert set(out.states) == {((1, 1, 1), rows_of(bag, (0, 1), (1, 2), (0, 2)))}
    other = _table(bag, [((1, 2, 1), rows_of(bag))])
    assert len(dp_join(2, bag, left, other)) == 0


def test_decide_examples():
    d = dicycle(3)
    assert fpt_decide(d, None, 1) == (False, None)
    ok, cert = fpt_decide(d, None, 2)
    assert ok and verify_certificate(d, cert)[0]
    k4 = complete_symmetric(4)
    assert not fpt_decide(k4, None, 3)[0]
    assert fpt_decide(k4, None, 4)[0]
    single = make_nice(TreeDecomposition([frozenset(range(4))]), underlying(k4))
    assert not fpt_decide(k4, single, 3)[0] and fpt_decide(k4, single, 4)[0]
    s, _ = product("strong", dicycle(3), dicycle(2))
    assert not fpt_decide(s, None, 2)[0]
    ok, cert = fpt_decide(s, None, 3)
    assert ok and verify_certificate(s, cert)[0]


def test_dichromatic_examples():
    assert fpt_dichromatic(transitive_tournament(6))[0] == 1
    assert fpt_dichromatic(symmetric_of(cycle_graph(5)))[0] == 3
    assert fpt_dichromatic(Digraph(0))[0] == 0
    assert fpt_dichromatic(Digraph(3))[0] == 1


def test_join_nodes_are_exercised():
    star = Digraph(6, [(0, v) for v in range(1, 6)] + [(v, 0) for v in range(1, 4)])
    td = TreeDecomposition([frozenset({0}), *(frozenset({0, v}) for v in range(1, 6))],
                           [(0, v) for v in range(1, 6)])
    nd = make_nice(td, underlying(star))
    assert any(x.kind == JOIN for x in nd.nodes)
    assert fpt_dichromatic(star, nd, check_invariants=True)[0] == 2


@given(digraphs(max_n=8))
def test_matches_exact(d):
    k, cert = fpt_dichromatic(d, check_invariants=True)
    assert k == dichromatic_exact(d)[0]
    assert verify_certificate(d, cert)[0]


@given(digraphs(max_n=7), st.integers(1, 3))
def test_symmetry_breaking_keeps_decision(d, k):
    nd = nice_decomposition(underlying(d))
    assert run_dp(d, nd, k).decided == run_dp(d, nd, k, symmetry_breaking=False).decided


@given(digraphs(max_n=6, max_arcs=12), st.integers(1, 3))
def test_tables_are_exact_representations(d, k):
    nd = nice_decomposition(underlying(d))
    run = run_dp(d, nd, k, symmetry_breaking=False)
    truth = true_tables(d, nd, k)
    for t, table in run.tables.items():
        assert set(table.states) == truth[t]


@given(digraphs(max_n=7, max_arcs=14))
def test_reconstructed_path_is_represented(d):
    from dichroma.fpt_dense import represented_key, subtree_vertices

    nd = nice_decomposition(underlying(d))
    k = dichromatic_exact(d)[0]
    run = run_dp(d, nd, k)
    color = dict(enumerate(run.coloring))
    verts = subtree_vertices(nd)
    for t, key in reconstruction_path(nd, run.tables).items():
        assert key == represented_key(d, nd.nodes[t].bag, verts[t], color)


@given(digraphs(max_n=7))
def test_introduce_states_are_feasible(d):
    nd = nice_decomposition(underlying(d))
    run = run_dp(d, nd, 2)
    for t, table in run.tables.items():
        node = nd.nodes[t]
        bound = state_bound(2, len(node.bag))
        assert len(table) <= bound
        if node.kind == "introduce":
            for colors, rows in table.states:
                assert is_feasible(d, node.bag, node.vertex, rows)
                assert is_feasible(d, node.bag, node.vertex, rows, colors)


def test_state_bound_values():
    assert state_bound(2, 0) == 1
    assert state_bound(3, 1) == 3
    assert state_bound(2, 3) == 8 * 27


def test_state_budget():
    d = complete_symmetric(5)
    with pytest.raises(StateBudgetExceeded):
        run_dp(d, nice_decomposition(underlying(d)), 5, state_limit=3)


def test_invalid_decomposition_rejected():
    d = dicycle(4)
    nd = nice_decomposition(underlying(dipath(4)))
    with pytest.raises(InvalidDecomposition):
        run_dp(d, nd, 2)
    with pytest.raises(InvalidDecomposition):
        run_dp(d, NiceTreeDecomposition([], None), 2)


def test_table_csv(tmp_path):
    d, _ = product("strong", dicycle(3), dicycle(3))
    nd = nice_decomposition(underlying(d))
    rows = []
    k, _ = fpt_dichromatic(d, nd, on_run=lambda run: rows.extend(run.stats(nd)))
    assert k == 3
    write_table_csv(rows, tmp_path / "t.csv")
    with open(tmp_path / "t.csv") as fh:
        got = list(csv.DictReader(fh))
    assert {int(r["k"]) for r in got} == {1, 2, 3}
    assert len(got) == 3 * len(nd.nodes)
    assert all(int(r["states"]) <= int(r["bound"]) for r in got)
    assert set(got[0]) == {"k", "node", "kind", "bag_size", "states", "bound"}

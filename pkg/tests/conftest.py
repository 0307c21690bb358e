import itertools

import networkx as nx
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from dichroma.digraph import Digraph, UndirectedGraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def to_nx(d: Digraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.arcs)
    return g


def naive_is_acyclic_coloring(d: Digraph, colors) -> bool:
    g = to_nx(d)
    for c in set(colors):
        part = [v for v in range(d.n) if colors[v] == c]
        if not nx.is_directed_acyclic_graph(g.subgraph(part)):
            return False
    return True


def naive_dichromatic(d: Digraph) -> int:
    """Try every coloring with 1, 2, ... colors; no pruning at all."""
    if d.n == 0:
        return 0
    for k in range(1, d.n + 1):
        for colors in itertools.product(range(k), repeat=d.n):
            if naive_is_acyclic_coloring(d, colors):
                return k
    raise AssertionError("unreachable")


def naive_has_coloring(d: Digraph, k: int) -> bool:
    return any(naive_is_acyclic_coloring(d, c) for c in itertools.product(range(k), repeat=d.n))


@st.composite
def digraphs(draw, min_n=1, max_n=6, max_arcs=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.sets(st.sampled_from(pairs), max_size=max_arcs or len(pairs))) if pairs else set()
    return Digraph(n, arcs)


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return UndirectedGraph(n, edges)


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path

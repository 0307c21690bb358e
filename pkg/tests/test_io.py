import pytest
from hypothesis import given

from dichroma.digraph import Digraph, GraphFormatError, UndirectedGraph, dicycle
from dichroma.exact import ColoringCertificate, dichromatic_exact
from dichroma.io import format_graph, parse_digraph, parse_graph, read_graph, read_json, write_graph, write_json
from dichroma.products import ProductIndex

from conftest import digraphs, graphs


def test_digraph_text_format():
    assert format_graph(dicycle(3)) == "3 3\n0 1\n1 2\n2 0\n"
    assert format_graph(UndirectedGraph(3, [(2, 0)])) == "u 3 1\n0 2\n"


@given(digraphs(min_n=0, max_n=8))
def test_digraph_round_trip(d):
    assert parse_graph(format_graph(d)) == d


@given(graphs(min_n=0))
def test_undirected_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_file_round_trip(tmp_path):
    d = dicycle(4)
    write_graph(d, tmp_path / "c4.dg")
    assert read_graph(tmp_path / "c4.dg") == d


@pytest.mark.parametrize("text", [
    "",
    "2 1\n0 0\n",            # loop
    "2 2\n0 1\n0 1\n",       # duplicate arc
    "u 2 2\n0 1\n1 0\n",     # duplicate edge
    "2 1\n0 2\n",            # out of range
    "3 2\n0 1\n",            # count mismatch
    "3 1\n0 x\n",            # not an integer
    "3 1\n0 1 2\n",          # too many fields
    "v 3 0\n",               # bad header
    "a b\n",
])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_two_cycle_is_not_a_duplicate():
    assert parse_graph("2 2\n0 1\n1 0\n") == dicycle(2)


def test_comments_are_skipped():
    assert parse_graph("# a dicycle\n2 2\n0 1\n# middle\n1 0\n") == dicycle(2)


def test_parse_digraph_rejects_undirected():
    with pytest.raises(GraphFormatError):
        parse_digraph("u 2 1\n0 1\n")


def test_certificate_json_round_trip(tmp_path):
    _, cert = dichromatic_exact(dicycle(5))
    write_json(cert.to_json(), tmp_path / "c.json")
    obj = read_json(tmp_path / "c.json")
    assert set(obj) == {"k", "colors", "class_orders"}
    assert ColoringCertificate.from_json(obj) == cert


def test_index_json_round_trip():
    idx = ProductIndex(3, 4)
    assert ProductIndex.from_json(idx.to_json()) == idx
    assert Digraph(0) == parse_graph("0 0\n")

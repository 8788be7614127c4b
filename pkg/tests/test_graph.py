from itertools import combinations

import pytest
from hypothesis import given

import oracles
from conftest import graphs, make_graph
from arckit.errors import ParseError, UnknownVertex
from arckit.graph import (
    Graph,
    VertexRelation,
    classify_vertex_pair,
    closed_neighborhood,
    complement,
    complete_graph,
    connected_components,
    cycle_graph,
    format_graph,
    induced_subgraph,
    is_d_vertex,
    is_similar_pair,
    is_strongly_adjacent,
    nested,
    parse_graph,
    path_graph,
    sort_vertices,
)


def test_closed_neighborhood_examples(c5):
    assert closed_neighborhood(Graph.from_edges(["a"]), "a") == {"a"}
    assert closed_neighborhood(c5, "1") == {"5", "1", "2"}
    assert closed_neighborhood(path_graph("abc"), "b") == {"a", "b", "c"}


def test_unknown_vertex(c5):
    with pytest.raises(UnknownVertex):
        closed_neighborhood(c5, "9")
    with pytest.raises(UnknownVertex):
        classify_vertex_pair(c5, "1", "x")
    with pytest.raises(UnknownVertex):
        induced_subgraph(c5, ["1", "x"])


def test_similar_pairs(c5):
    c4 = cycle_graph("1234")
    assert is_similar_pair(c4, "1", "3")
    assert not is_similar_pair(c5, "1", "3")
    assert is_similar_pair(complete_graph("ab"), "a", "b")


def test_d_vertices(c5):
    assert all(is_d_vertex(complete_graph("abc"), v) for v in "abc")
    assert not any(is_d_vertex(c5, v) for v in c5)
    star = make_graph("c-x c-y c-z")
    assert is_d_vertex(star, "c")
    assert not is_d_vertex(star, "x")


def test_classify_examples(c5):
    p3 = path_graph("abc")
    assert classify_vertex_pair(p3, "a", "b") is VertexRelation.NESTED_ADJACENT
    assert classify_vertex_pair(c5, "1", "2") is VertexRelation.STRICTLY_NOT_STRONGLY_ADJACENT
    assert classify_vertex_pair(c5, "1", "3") is VertexRelation.INDEPENDENT


def test_similar_wins_over_nested():
    # true twins have equal closed neighborhoods, so they are nested too
    g = make_graph("a-b a-c b-c c-d")
    assert classify_vertex_pair(g, "a", "b") is VertexRelation.SIMILAR


def test_strong_adjacency_example():
    # P4's middle edge: each end's non-neighbor is nested in the other end
    g = path_graph("abcd")
    assert is_strongly_adjacent(g, "b", "c")
    assert classify_vertex_pair(g, "b", "c") is VertexRelation.STRONGLY_ADJACENT


def test_graph_plumbing():
    assert complement(complete_graph("abc")) == Graph.from_edges("abc")
    two_k2 = make_graph("a-b c-d")
    assert connected_components(two_k2) == [frozenset("ab"), frozenset("cd")]
    c5 = cycle_graph("12345")
    assert induced_subgraph(c5, ["1", "2", "3"]) == path_graph("123")


def test_sort_is_natural():
    assert sort_vertices(["s10", "s2", "s", "a"]) == ["a", "s", "s2", "s10"]


@given(graphs(max_n=7))
def test_classification_matches_definition(g):
    adj = oracles.adj_of(g)
    for a, b in combinations(g.vertices, 2):
        assert str(classify_vertex_pair(g, a, b)) == oracles.relation(adj, a, b)


@given(graphs(max_n=7))
def test_classification_symmetric(g):
    for a, b in combinations(g.vertices, 2):
        assert classify_vertex_pair(g, a, b) is classify_vertex_pair(g, b, a)


@given(graphs(max_n=7))
def test_strong_implies_not_nested(g):
    for a, b in combinations(g.vertices, 2):
        if classify_vertex_pair(g, a, b) is VertexRelation.STRONGLY_ADJACENT:
            assert g.has_edge(a, b)
            assert not nested(g, a, b) and not nested(g, b, a)


@given(graphs(max_n=7))
def test_complement_involution_and_components_partition(g):
    assert complement(complement(g)) == g
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == sorted(g.vertices)
    mins = [sort_vertices(c)[0] for c in comps]
    assert mins == sort_vertices(mins)
    for c in comps:
        for v in c:
            assert g.neighbors(v) <= c


@given(graphs(max_n=7))
def test_text_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_graph("vertices: a b\n\nedge: a c\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_graph("edge: a b\n")
    with pytest.raises(ParseError):
        parse_graph("vertices: a b\nedge: a a\n")
    with pytest.raises(ParseError):
        parse_graph("vertices: a a\n")
    with pytest.raises(ParseError):
        parse_graph("# only a comment\n")
    assert parse_graph("# c\nvertices: a b  # trailing\nedge: a b\n") == complete_graph("ab")

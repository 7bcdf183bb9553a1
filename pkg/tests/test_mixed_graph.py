import networkx as nx
import numpy as np
import pytest

from utils.errors import CodeDomainError, ConflictError, LoopError, NotAdjacentError
from utils.mixed_graph import (ColourSpec, MixedGraph, VertexMap, add_adjacency, adjacency_vector, arc_classes,
                               build_graph, disjoint_union, dual, edge_classes,
                               induced_subgraph, is_complete_subgraph, is_connected, max_degree, to_networkx)


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (2, 0), (1, 1), (3, 3), (0, 4)])
def test_dual_is_an_involution_fixing_edges(m, n):
    spec = ColourSpec(m, n)
    for code in range(spec.c + 1):
        assert dual(dual(code, spec), spec) == code
    for code in range(spec.m + 1):
        assert dual(code, spec) == code


def test_dual_swaps_arc_directions():
    spec = ColourSpec(1, 2)
    assert [dual(code, spec) for code in range(6)] == [0, 1, 4, 5, 2, 3]
    assert list(spec.dual_table) == [0, 1, 4, 5, 2, 3]


def test_dual_rejects_codes_outside_alphabet():
    with pytest.raises(CodeDomainError):
        dual(3, ColourSpec(0, 1))


def test_colour_spec_needs_some_colour():
    with pytest.raises(CodeDomainError):
        ColourSpec(0, 0)
    with pytest.raises(CodeDomainError):
        ColourSpec(-1, 2)


def test_describe_codes():
    spec = ColourSpec(1, 1)
    assert spec.describe(1) == ('edge', 1)
    assert spec.describe(2) == ('out', 1)
    assert spec.describe(3) == ('in', 1)


def test_arc_is_seen_from_both_ends(directed_p3):
    assert directed_p3.code[0, 1] == 1
    assert directed_p3.code[1, 0] == 2
    assert directed_p3.code[0, 2] == 0
    assert directed_p3.size() == 2


def test_build_graph_rejects_bad_adjacencies(oriented):
    with pytest.raises(ConflictError):
        build_graph(oriented, 2, [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(LoopError):
        build_graph(oriented, 2, [(1, 1, 1)])
    with pytest.raises(CodeDomainError):
        build_graph(oriented, 2, [(0, 1, 3)])
    with pytest.raises(CodeDomainError):
        build_graph(oriented, 2, [(0, 2, 1)])


def test_from_matrix_checks_duality(oriented):
    with pytest.raises(ConflictError):
        MixedGraph.from_matrix(oriented, [[0, 1], [1, 0]])
    with pytest.raises(LoopError):
        MixedGraph.from_matrix(oriented, [[1, 0], [0, 0]])
    with pytest.raises(CodeDomainError):
        MixedGraph.from_matrix(oriented, [[0, 1, 0], [2, 0, 0]])
    G = MixedGraph.from_matrix(oriented, [[0, 1], [2, 0]])
    assert G.p == 2


def test_code_matrix_is_read_only(directed_p3):
    with pytest.raises(ValueError):
        directed_p3.code[0, 2] = 1


def test_equality_ignores_labels(oriented):
    G = build_graph(oriented, 2, [(0, 1, 1)], labels=['x', 'y'])
    H = build_graph(oriented, 2, [(0, 1, 1)])
    assert G == H
    assert hash(G) == hash(H)
    assert G != build_graph(oriented, 2, [(0, 1, 2)])


def test_adjacency_vector(directed_p3):
    assert adjacency_vector(directed_p3, 1, [0, 2]) == (2, 1)
    assert adjacency_vector(directed_p3, 0, []) == ()
    with pytest.raises(NotAdjacentError):
        adjacency_vector(directed_p3, 0, [2])


def test_degree_and_completeness(directed_p3, directed_c3):
    assert max_degree(directed_p3) == 2
    assert max_degree(build_graph(ColourSpec(1, 0), 0, [])) == 0
    assert not is_complete_subgraph(directed_p3, [0, 1, 2])
    assert is_complete_subgraph(directed_p3, [0, 1])
    assert is_complete_subgraph(directed_c3, [0, 1, 2])
    assert is_complete_subgraph(directed_p3, [])


def test_colour_classes():
    spec = ColourSpec(1, 1)
    G = build_graph(spec, 4, [(0, 1, 1), (1, 2, 2), (2, 3, 3)])
    assert edge_classes(G) == {1: [(0, 1)]}
    assert arc_classes(G) == {1: [(1, 2), (3, 2)]}


def test_networkx_view(directed_p3):
    graph = to_networkx(directed_p3)
    assert isinstance(graph, nx.Graph)
    assert sorted(graph.edges()) == [(0, 1), (1, 2)]
    assert graph.edges[0, 1]['code'] == 1
    assert is_connected(directed_p3)
    assert not is_connected(disjoint_union([directed_p3, directed_p3]))


def test_vertex_map_validation_and_composition(directed_p3, directed_c3):
    f = VertexMap(directed_p3, directed_c3, (0, 1, 2))
    g = VertexMap(directed_c3, directed_c3, (1, 2, 0))
    assert f.compose(g).image == (1, 2, 0)
    assert f[2] == 2
    with pytest.raises(CodeDomainError):
        VertexMap(directed_p3, directed_c3, (0, 1))
    with pytest.raises(CodeDomainError):
        VertexMap(directed_p3, directed_c3, (0, 1, 3))
    with pytest.raises(CodeDomainError):
        g.compose(f)


def test_subgraph_union_and_added_adjacency(directed_p3, oriented):
    sub = induced_subgraph(directed_p3, [1, 2])
    assert sub == build_graph(oriented, 2, [(0, 1, 1)])
    union = disjoint_union([directed_p3, sub])
    assert union.p == 5
    assert union.code[3, 4] == 1
    assert union.size() == 3
    closed = add_adjacency(directed_p3, 2, 0, 1)
    assert closed.code[0, 2] == 2
    assert np.count_nonzero(directed_p3.code) == 4
    with pytest.raises(ConflictError):
        add_adjacency(directed_p3, 0, 1, 1)

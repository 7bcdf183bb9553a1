import numpy as np
import pytest

from scripts.constructive import (OneFactorization, UniversalColourer, ZVertex, build_H, build_universal_target,
                                  build_Z, cyclic_factorization, shuffled_factorization, validate_factorization,
                                  z_vertex_id, z_vertices)
from scripts.properties import has_property_P
from scripts.solver import is_homomorphism
from utils.errors import CodeDomainError
from utils.generators import path_orientations, random_bounded_degree
from utils.mixed_graph import ColourSpec, build_graph, to_networkx


def test_cyclic_factorization():
    assert cyclic_factorization(1).perms == ((0,),)
    assert cyclic_factorization(2).perms == ((0, 1), (1, 0))
    table = cyclic_factorization(5).factor_table()
    for row in table:
        assert sorted(row.tolist()) == [1, 2, 3, 4, 5]
    for column in table.T:
        assert sorted(column.tolist()) == [1, 2, 3, 4, 5]


def test_factorization_validation():
    with pytest.raises(CodeDomainError):
        validate_factorization([[0, 1], [0, 1]])
    with pytest.raises(CodeDomainError):
        validate_factorization([[0, 0], [1, 1]])
    with pytest.raises(CodeDomainError):
        validate_factorization([[0, 1, 2], [1, 2, 0]])


def test_factorization_text_round_trip():
    fac = shuffled_factorization(4, 3)
    assert OneFactorization.from_text(fac.to_text()).perms == fac.perms


@pytest.mark.parametrize("c", [2, 3, 4, 5])
def test_shuffled_factorization_differs_from_cyclic(c):
    fac = shuffled_factorization(c, 17)
    assert fac.perms != cyclic_factorization(c).perms
    assert fac == shuffled_factorization(c, 17)


def test_build_H_oriented():
    spec = ColourSpec(0, 1)
    H = build_H(spec, cyclic_factorization(2))
    # arcs a_0 -> b_0, a_1 -> b_1, b_1 -> a_0, b_0 -> a_1
    assert H.code[0, 2] == 1 and H.code[1, 3] == 1
    assert H.code[3, 0] == 1 and H.code[2, 1] == 1
    assert H.labels == ('a1', 'a2', 'b1', 'b2')


def test_build_H_two_edge_colours():
    H = build_H(ColourSpec(2, 0), cyclic_factorization(2))
    assert H.code[0, 2] == 1 and H.code[1, 3] == 1
    assert H.code[0, 3] == 2 and H.code[1, 2] == 2


@pytest.mark.parametrize("m,n", [(0, 1), (1, 1), (2, 1), (0, 2)])
def test_H_underlying_graph_is_complete_bipartite(m, n):
    spec = ColourSpec(m, n)
    H = build_H(spec, cyclic_factorization(spec.c))
    assert H.size() == spec.c ** 2
    assert np.count_nonzero(H.code[:spec.c, :spec.c]) == 0
    assert np.count_nonzero(H.code[spec.c:, spec.c:]) == 0


def test_build_H_size_mismatch():
    with pytest.raises(CodeDomainError):
        build_H(ColourSpec(1, 1), cyclic_factorization(2))


def test_z_vertex_labels_and_ids():
    vertices = z_vertices(3, 2)
    assert len(vertices) == 12
    assert vertices[0] == ZVertex(1, (0, 1, 1))
    assert vertices[4] == ZVertex(2, (1, 0, 1))
    assert [z_vertex_id(v, 2) for v in vertices] == list(range(12))
    assert str(ZVertex(2, (3, 0, 1))) == "(2;3,.,1)"
    with pytest.raises(CodeDomainError):
        ZVertex(1, (1, 0, 1))


def test_Z_oriented_q3():
    spec = ColourSpec(0, 1)
    Z = build_universal_target(spec, 2)
    assert Z.p == 12
    graph = to_networkx(Z)
    parts = [range(0, 4), range(4, 8), range(8, 12)]
    for part in parts:
        assert all(not Z.code[u, v] for u in part for v in part)
    assert Z.size() == 3 * 4 * 4
    assert graph.number_of_edges() == 48


def test_Z_adjacency_follows_H():
    spec = ColourSpec(1, 1)
    H = build_H(spec, cyclic_factorization(3))
    Z = build_Z(spec, 3, H)
    for v, left in enumerate(Z.labels):
        for w, right in enumerate(Z.labels):
            if left.index < right.index:
                s = left.coords[right.index - 1]
                t = right.coords[left.index - 1]
                assert Z.code[v, w] == H.code[s - 1, 3 + t - 1]


def test_Z_with_one_index_is_a_single_vertex():
    Z = build_Z(ColourSpec(2, 1), 1, build_H(ColourSpec(2, 1), cyclic_factorization(4)))
    assert Z.p == 1


def test_build_Z_rejects_mismatched_H():
    H = build_H(ColourSpec(2, 0), cyclic_factorization(2))
    with pytest.raises(CodeDomainError):
        build_Z(ColourSpec(0, 1), 3, H)
    with pytest.raises(CodeDomainError):
        build_Z(ColourSpec(2, 0), 0, H)


@pytest.mark.parametrize("m,n,q", [(0, 1, 2), (0, 1, 3), (2, 0, 3), (1, 1, 3), (0, 1, 4)])
def test_Z_has_extension_property(m, n, q):
    spec = ColourSpec(m, n)
    Z = build_Z(spec, q, build_H(spec, cyclic_factorization(spec.c)))
    assert Z.p == q * spec.c ** (q - 1)
    assert has_property_P(Z, q - 1, 1).holds


@pytest.mark.parametrize("m,n", [(1, 1), (3, 0)])
def test_shuffled_Z_has_extension_property(m, n):
    spec = ColourSpec(m, n)
    Z = build_Z(spec, 3, build_H(spec, shuffled_factorization(3, 5)))
    assert has_property_P(Z, 2, 1).holds


def test_universal_colouring_single_vertex(config):
    spec = ColourSpec(0, 1)
    G = build_graph(spec, 1, [])
    Z = build_universal_target(spec, 2)
    f = UniversalColourer(config).universal_colouring(G, Z, 3, 2)
    assert 0 <= f[0] < Z.p


def test_universal_colouring_of_p5_orientations(config):
    Z = build_universal_target(ColourSpec(0, 1), 2)
    colourer = UniversalColourer(config)
    for G in path_orientations(5):
        assert is_homomorphism(colourer.universal_colouring(G, Z, 3, 2))


def test_universal_colouring_random_degree_two(config):
    spec = ColourSpec(0, 1)
    Z = build_universal_target(spec, 2)
    colourer = UniversalColourer(config)
    for seed in range(40):
        G = random_bounded_degree(spec, 12, 2, 0.7, seed)
        assert is_homomorphism(colourer.universal_colouring(G, Z, 3, 2))
    assert colourer.stats['fallbacks'] == 0


def test_universal_colouring_random_degree_three(config):
    spec = ColourSpec(1, 1)
    Z = build_universal_target(spec, 3)
    assert Z.p == 5 * 3 ** 4
    colourer = UniversalColourer(config)
    for seed in range(25):
        G = random_bounded_degree(spec, 14, 3, 0.6, seed)
        f = colourer.universal_colouring(G, Z, 5, 3)
        assert is_homomorphism(f)
    assert colourer.stats['fallbacks'] == 0


@pytest.mark.parametrize("seed", [20240607 + 36, 20240607 + 64])
def test_universal_colouring_when_neighbours_share_an_index(config, seed):
    spec = ColourSpec(1, 1)
    Z = build_universal_target(spec, 3)
    colourer = UniversalColourer(config)
    G = random_bounded_degree(spec, 16, 3, 0.6, seed)
    f = colourer.universal_colouring(G, Z, 5, 3)
    assert is_homomorphism(f)
    assert colourer.stats['fallbacks'] == 0


def test_universal_colouring_on_a_shuffled_target(config):
    spec = ColourSpec(1, 1)
    Z = build_Z(spec, 5, build_H(spec, shuffled_factorization(3, 11)))
    colourer = UniversalColourer(config)
    for seed in range(10):
        G = random_bounded_degree(spec, 16, 3, 0.6, seed)
        assert is_homomorphism(colourer.universal_colouring(G, Z, 5, 3))
    assert colourer.stats['fallbacks'] == 0


def test_universal_colouring_preconditions(config):
    spec = ColourSpec(0, 1)
    Z = build_universal_target(spec, 2)
    colourer = UniversalColourer(config)
    star = build_graph(spec, 4, [(0, 1, 1), (0, 2, 1), (0, 3, 2)])
    with pytest.raises(ValueError):
        colourer.universal_colouring(star, Z, 3, 2)
    with pytest.raises(ValueError):
        colourer.universal_colouring(build_graph(spec, 2, [(0, 1, 1)]), Z, 5, 2)
    with pytest.raises(CodeDomainError):
        colourer.universal_colouring(build_graph(ColourSpec(1, 0), 1, []), Z, 3, 2)
    with pytest.raises(CodeDomainError):
        colourer.universal_colouring(build_graph(spec, 1, []), build_H(spec, cyclic_factorization(2)), 3, 2)

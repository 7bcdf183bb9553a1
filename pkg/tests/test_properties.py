import pytest

from scripts.properties import (EXHAUSTIVE, SAMPLED, complete_subgraphs, first_deficit, has_property_P,
                                property_work, tuple_counts)
from utils.generators import random_complete
from utils.mixed_graph import ColourSpec, adjacency_vector, build_graph


def test_directed_triangle(directed_c3):
    assert has_property_P(directed_c3, 1, 1).holds
    report = has_property_P(directed_c3, 1, 2)
    assert not report.holds
    assert report.certified is False
    X, L, found = report.counterexample
    assert (X, L, found) == ((0,), (1,), 1)


def test_counterexample_is_genuine(directed_c3):
    X, L, found = has_property_P(directed_c3, 1, 2).counterexample
    witnesses = [x for x in range(directed_c3.p)
                 if x not in X and all(directed_c3.code[x, v] for v in X)
                 and adjacency_vector(directed_c3, x, X) == L]
    assert len(witnesses) == found


def test_empty_set_clause_counts_vertices(directed_p3):
    assert has_property_P(directed_p3, 0, 3).holds
    report = has_property_P(directed_p3, 0, 4)
    assert report.counterexample == ((), (), 3)


def test_missing_codes_fail_a_single_adjacency(oriented):
    G = build_graph(oriented, 2, [(0, 1, 1)])
    report = has_property_P(G, 1, 1)
    assert not report.holds
    assert report.counterexample[:2] == ((0,), (1,))


def test_complete_subgraphs_are_lexicographic(directed_p3, directed_c3):
    assert list(complete_subgraphs(directed_c3, 2)) == [(0, 1), (0, 2), (1, 2)]
    assert list(complete_subgraphs(directed_p3, 2)) == [(0, 1), (1, 2)]
    assert list(complete_subgraphs(directed_p3, 3)) == []


def test_tuple_counts_and_first_deficit(directed_c3):
    code = directed_c3.code
    assert tuple_counts(code, 2, (0,)).tolist() == [1, 1]
    assert tuple_counts(code, 2, (0, 1)).tolist() == [0, 1, 0, 0]
    assert first_deficit(code, 2, 1, (0, 1)) == ((0, 1), (1, 1), 0)


def test_sampled_mode_never_certifies():
    H = random_complete(ColourSpec(0, 1), 40, 3)
    report = has_property_P(H, 2, 1, SAMPLED, trials=200, seed=5)
    assert report.mode_label() == "sampled(200,5)"
    assert not report.certified
    assert report == has_property_P(H, 2, 1, SAMPLED, trials=200, seed=5)


def test_sampling_finds_violations():
    H = random_complete(ColourSpec(1, 1), 8, 11)
    report = has_property_P(H, 2, 3, SAMPLED, trials=100, seed=1)
    assert not report.holds


def test_parallel_check_matches_sequential():
    H = random_complete(ColourSpec(0, 1), 14, 9)
    sequential = has_property_P(H, 2, 1)
    parallel = has_property_P(H, 2, 1, jobs=2)
    assert sequential.holds == parallel.holds
    assert sequential.counterexample == parallel.counterexample


def test_parameter_validation(directed_c3):
    with pytest.raises(ValueError):
        has_property_P(directed_c3, -1, 1)
    with pytest.raises(ValueError):
        has_property_P(directed_c3, 1, 0)
    with pytest.raises(ValueError):
        has_property_P(directed_c3, 1, 1, mode='guess')


def test_property_work():
    assert property_work(20, 2, 2) == 190 * 4 * 20
    assert property_work(3888, 4, 3) > 10 ** 10


def test_report_row(directed_c3):
    row = has_property_P(directed_c3, 1, 2, EXHAUSTIVE).to_row()
    assert row['holds'] is False
    assert row['X'] == '0'
    assert row['L'] == '1'
    assert row['found'] == 1

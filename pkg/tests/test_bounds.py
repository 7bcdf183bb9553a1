import pytest

from scripts.bounds import bounds, min_one_universal_size
from utils.mixed_graph import ColourSpec


def test_oriented_degree_two():
    table = bounds(2, ColourSpec(0, 1))
    assert table.sopena == 12
    assert table.ksz == 32
    assert table.dns is None
    assert (table.lower_floor, table.lower_ceil) == (2, 2)
    assert table.best_proven == 12
    assert table.min_one_universal == 2


def test_odd_degree_root_bounds():
    table = bounds(3, ColourSpec(0, 1))
    assert table.sopena == 80
    assert table.ksz == 144
    assert (table.lower_floor, table.lower_ceil) == (2, 3)


def test_large_degree_uses_every_formula():
    table = bounds(5, ColourSpec(1, 1))
    assert table.sopena == 9 * 3 ** 8
    assert table.ksz == 25 * 3 ** 6
    assert table.dns == 2 * 4 ** 3 * 3 ** 4
    assert table.best_proven == table.dns
    assert (table.lower_floor, table.lower_ceil) == (15, 16)


def test_dns_needs_two_codes():
    assert bounds(6, ColourSpec(1, 0)).dns is None


def test_degree_one_and_zero():
    table = bounds(1, ColourSpec(3, 3))
    assert table.sopena is None
    assert table.sopena_noted == 1
    assert table.best_proven == 4
    empty = bounds(0, ColourSpec(0, 1))
    assert empty.best_proven == 1
    assert (empty.lower_floor, empty.lower_ceil) == (1, 1)


@pytest.mark.parametrize("m,n,expected", [(1, 0, 2), (2, 0, 3), (0, 1, 2), (0, 2, 3), (1, 1, 3), (3, 3, 4), (5, 5, 5)])
def test_min_one_universal_size(m, n, expected):
    assert min_one_universal_size(ColourSpec(m, n)) == expected


def test_frame_marks_missing_entries():
    frame = bounds(2, ColourSpec(0, 1)).to_frame()
    assert frame.loc[0, 'dns'] == 'n/a'
    assert frame.loc[0, 'sopena'] == 12
    with pytest.raises(ValueError):
        bounds(-1, ColourSpec(0, 1))

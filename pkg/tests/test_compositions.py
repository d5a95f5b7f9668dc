from math import comb

import pytest

from blowup_futaki.algebra.compositions import block_structures, compositions


@pytest.mark.parametrize("total,parts", [(0, 1), (3, 2), (4, 3), (5, 1), (0, 3)])
def test_composition_count(total, parts):
    got = list(compositions(total, parts))
    assert len(got) == comb(total + parts - 1, parts - 1)
    assert len(set(got)) == len(got)
    assert all(sum(c) == total and len(c) == parts for c in got)


def test_negative_total_is_empty():
    assert list(compositions(-1, 2)) == []
    assert list(compositions(0, 0)) == [()]


def test_block_structures():
    structures = list(block_structures(3, 2))
    assert structures == [(2,), (1, 1), (3,), (1, 2), (2, 1)]
    # every ordered composition of n into at most three positive parts
    assert len(list(block_structures(6, 3, n_min=6))) == comb(5, 0) + comb(5, 1) + comb(5, 2)

"""Layout and time-subset bookkeeping."""

import pytest

from groupcodes.residues import Subgroup
from groupcodes.spaces import Interval, SymbolLayout, embed_zero, restrict_columns


def test_coords_spec_examples():
    lay = SymbolLayout.uniform(2, 4, 3)
    assert lay.coords({1}) == [3, 4, 5]
    assert lay.coords(lay.full_subset()) == list(range(12))
    mixed = SymbolLayout(2, (2, 1, 2))
    assert mixed.coords({0, 2}) == [0, 1, 3, 4]


def test_coords_partition():
    lay = SymbolLayout(3, (2, 1, 3, 1))
    j = lay.subset({0, 2})
    assert sorted(lay.coords(j) + lay.coords(lay.complement(j))) == list(range(lay.total_dim))


def test_out_of_range_time():
    lay = SymbolLayout.uniform(2, 3)
    with pytest.raises(ValueError):
        lay.coords({3})


def test_embed_restrict_roundtrip():
    lay = SymbolLayout(4, (2, 1, 2))
    j = lay.subset({0, 2})
    v = [1, 2, 3, 0]
    full = embed_zero(lay, j, v)
    assert full.tolist() == [1, 2, 0, 3, 0]
    assert embed_zero(lay, frozenset(), []).tolist() == [0] * 5
    assert embed_zero(lay, lay.full_subset(), [1, 2, 3, 0, 1]).tolist() == [1, 2, 3, 0, 1]


def test_embed_zero_spec_example():
    lay = SymbolLayout.uniform(2, 3)
    assert embed_zero(lay, {2}, [1]).tolist() == [0, 0, 1]


def test_restrict_columns_full_space_memoryless():
    lay = SymbolLayout(4, (1, 2, 1))
    full = Subgroup.full(4, lay.total_dim)
    for times in [{0}, {1}, {0, 2}, {0, 1, 2}]:
        j = lay.subset(times)
        r = restrict_columns(full, lay, j)
        assert r == Subgroup.full(4, len(lay.coords(j)))


def test_interval_times():
    lay = SymbolLayout.uniform(2, 6)
    assert sorted(Interval(1, 3).times(lay)) == [1, 2, 3]
    assert sorted(Interval(4, 1, wraparound=True).times(lay)) == [0, 1, 4, 5]
    with pytest.raises(ValueError):
        Interval(3, 1)
    with pytest.raises(ValueError):
        Interval(1, 3, wraparound=True)

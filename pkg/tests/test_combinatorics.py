import itertools

import numpy as np
import pytest

from latentweight.combinatorics import count, rank_blocks, split_ranges, subsets, unrank


class TestCounts:
    @pytest.mark.parametrize("d, expected", [(2, 3), (3, 35), (6, 67945521), (5, 169911)])
    def test_square_subsystem_counts(self, d, expected):
        assert count((1 << d) - 1, d) == expected

    def test_lazy(self):
        it = subsets(63, 6)
        assert next(it) == (0, 1, 2, 3, 4, 5)
        assert next(it) == (0, 1, 2, 3, 4, 6)


class TestUnrank:
    @pytest.mark.parametrize("n, k", [(3, 2), (7, 3), (15, 4), (10, 1), (6, 6)])
    def test_matches_itertools(self, n, k):
        ref = np.array(list(itertools.combinations(range(n), k)))
        np.testing.assert_array_equal(unrank(np.arange(len(ref)), n, k), ref)

    def test_blocks_cover_range(self):
        ref = np.array(list(itertools.combinations(range(15), 4)))
        got = np.concatenate(list(rank_blocks(15, 4, 97, 100, 1000)))
        np.testing.assert_array_equal(got, ref[100:1000])

    def test_last_subset(self):
        n, k = 63, 6
        np.testing.assert_array_equal(unrank([count(n, k) - 1], n, k)[0], np.arange(57, 63))


class TestSplitRanges:
    def test_contiguous(self):
        r = split_ranges(1000, 7)
        assert r[0][0] == 0 and r[-1][1] == 1000
        assert all(a[1] == b[0] for a, b in zip(r, r[1:]))

    def test_more_parts_than_items(self):
        assert split_ranges(3, 10) == [(0, 1), (1, 2), (2, 3)]

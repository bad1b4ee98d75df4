import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigkit import (
    NotASquare,
    RankOutOfRange,
    TooShort,
    WeakComposition,
    composition_count,
    enumerate_all,
    gamma,
    gamma_inv,
    project,
    unrank_lex,
    unrank_lex_fast,
)
from sigkit.compositions import next_composition

from oracles import brute_compositions


class TestCount:
    @pytest.mark.parametrize("m, k, expected", [(200, 4, 1373701), (20, 9, 3108105), (7, 1, 1), (0, 5, 1)])
    def test_anchors(self, m, k, expected):
        assert composition_count(m, k) == expected

    @pytest.mark.parametrize("m, k", [(m, k) for m in range(6) for k in range(1, 5)])
    def test_matches_brute_force(self, m, k):
        assert composition_count(m, k) == len(brute_compositions(m, k))

    def test_big_values_stay_exact(self):
        big = composition_count(10**6, 25)
        assert big == math.comb(10**6 + 24, 24)
        assert len(str(big)) > 100

    def test_bad_k(self):
        with pytest.raises(ValueError):
            composition_count(3, 0)


@pytest.mark.parametrize("m", range(1, 51))
def test_adjacent_count_identities(m):
    for k in range(1, 51):
        c = composition_count(m, k)
        assert (m * c) % (m + k - 1) == 0
        assert m * c // (m + k - 1) == composition_count(m - 1, k)
        if k > 1:
            assert ((k - 1) * c) % (m + k - 1) == 0
            assert (k - 1) * c // (m + k - 1) == composition_count(m, k - 1)


class TestGamma:
    def test_row_major(self):
        assert gamma((8, 3, 0, 9)) == [[8, 3], [0, 9]]
        assert gamma((1,)) == [[1]]
        assert gamma(range(9)) == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]

    @pytest.mark.parametrize("length", [0, 2, 3, 5, 8])
    def test_not_a_square(self, length):
        with pytest.raises(NotASquare):
            gamma([0] * length)

    def test_bijection_random(self):
        rnd = random.Random(7)
        for _ in range(100):
            n = rnd.randint(1, 6)
            x = tuple(rnd.randint(0, 50) for _ in range(n * n))
            assert gamma_inv(gamma(x)) == x


class TestProject:
    def test_examples(self):
        assert project((0.4, 0.15, 0, 0.45)) == (0.4, 0.15, 0)
        assert project((1, 2)) == (1,)

    def test_too_short(self):
        with pytest.raises(TooShort):
            project((1.0,))

    @given(st.lists(st.floats(allow_nan=False), min_size=2, max_size=30))
    def test_drops_one(self, x):
        assert len(project(x)) == len(x) - 1


class TestUnrank:
    @pytest.mark.parametrize("fn", [unrank_lex, unrank_lex_fast])
    def test_examples(self, fn):
        assert fn(2, 3, 0).parts == (0, 0, 2)
        assert fn(2, 3, 5).parts == (2, 0, 0)
        assert fn(2, 3, 3).parts == (1, 0, 1)
        assert fn(0, 5, 0).parts == (0, 0, 0, 0, 0)
        assert fn(4, 1, 0).parts == (4,)

    def test_rank_three_is_brute_forced(self):
        assert brute_compositions(2, 3)[3] == (1, 0, 1)

    @pytest.mark.parametrize("fn", [unrank_lex, unrank_lex_fast])
    def test_out_of_range(self, fn):
        with pytest.raises(RankOutOfRange):
            fn(2, 3, 6)
        with pytest.raises(RankOutOfRange):
            fn(2, 3, -1)

    @pytest.mark.parametrize("m, k", [(m, k) for m in range(7) for k in range(1, 7)])
    def test_bijective_ordered_and_equal_to_enumeration(self, m, k):
        total = composition_count(m, k)
        ranked = [unrank_lex(m, k, i) for i in range(total)]
        assert len(set(ranked)) == total
        assert all(a < b for a, b in zip(ranked, ranked[1:]))
        assert ranked == list(enumerate_all(m, k))
        assert [c.parts for c in ranked] == brute_compositions(m, k)

    @pytest.mark.parametrize("m, k", [(m, k) for m in range(9) for k in range(1, 7)])
    def test_fast_equals_slow_exhaustively(self, m, k):
        for i in range(composition_count(m, k)):
            assert unrank_lex_fast(m, k, i) == unrank_lex(m, k, i)

    def test_fast_equals_slow_random_large(self):
        rnd = random.Random(12345)
        for _ in range(1000):
            m = rnd.randint(0, 10**4)
            k = rnd.randint(1, 25)
            i = rnd.randrange(composition_count(m, k))
            a = unrank_lex_fast(m, k, i)
            assert a == unrank_lex(m, k, i)
            assert a.m == m and a.k == k

    def test_huge_rank(self):
        m, k = 10**6, 25
        total = composition_count(m, k)
        last = unrank_lex_fast(m, k, total - 1)
        assert last.parts == (m,) + (0,) * (k - 1)
        mid = unrank_lex_fast(m, k, total // 2)
        assert mid.m == m


class TestEnumerate:
    def test_small(self):
        assert [c.parts for c in enumerate_all(2, 2)] == [(0, 2), (1, 1), (2, 0)]
        assert [c.parts for c in enumerate_all(0, 3)] == [(0, 0, 0)]

    def test_length(self):
        assert sum(1 for _ in enumerate_all(20, 4)) == 1771 == composition_count(20, 4)

    def test_start_rank(self):
        tail = [c.parts for c in enumerate_all(4, 3, start=6)]
        assert tail == brute_compositions(4, 3)[6:]

    def test_successor_stops_at_last(self):
        last = [3, 0, 0]
        assert not next_composition(last)
        assert last == [3, 0, 0]

    def test_deep_k_does_not_recurse(self):
        it = enumerate_all(1, 2000)
        assert sum(1 for _ in it) == 2000


class TestWeakComposition:
    def test_fields(self):
        c = WeakComposition((1, 0, 3))
        assert (c.m, c.k, tuple(c)) == (4, 3, (1, 0, 3))

    def test_invalid(self):
        with pytest.raises(ValueError):
            WeakComposition(())
        with pytest.raises(ValueError):
            WeakComposition((1, -1))


def scaled_projected_grid(m, k):
    return np.array([project(c.parts) for c in enumerate_all(m, k)], dtype=float) / m


@pytest.mark.parametrize("m", [3, 5, 10])
def test_grid_distance_is_one_over_m(m):
    pts = scaled_projected_grid(m, 4)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    best = dist.min()
    assert abs(best - 1 / m) <= 1e-12
    for a, b in zip(*np.nonzero(np.abs(dist - best) <= 1e-12)):
        assert np.count_nonzero(np.abs(pts[a] - pts[b]) > 1e-15) == 1


def test_brute_oracle_is_lexicographic():
    assert brute_compositions(1, 3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert brute_compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lormatch import (
    Matroid,
    StatTable,
    SubsetSeq,
    basis_match_count,
    basis_match_poly,
    match_count,
    match_poly,
    stat_table,
    uniform_matroid,
)
from lormatch.polynomials import Poly

WIDE = SubsetSeq(4, (frozenset({1, 2, 3, 4}), frozenset({2, 3}), frozenset({3, 4})))


@st.composite
def seqs(draw, max_m=4, max_n=4):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    sets = tuple(frozenset(draw(st.sets(st.integers(1, m)))) for _ in range(n))
    return SubsetSeq(m, sets)


class TestMatchCount:
    def test_worked_example_pairs(self):
        assert match_count(WIDE, (1, 2)) == 5
        assert match_count(WIDE, (1, 3)) == 5
        assert match_count(WIDE, (2, 3)) == 3

    def test_empty_topic(self):
        assert match_count(WIDE, ()) == 1

    def test_oversized_topic(self):
        narrow = SubsetSeq(1, (frozenset({1}), frozenset({1})))
        assert match_count(narrow, (1, 2)) == 0

    def test_bad_topic(self):
        with pytest.raises(ValueError):
            match_count(WIDE, (0,))
        with pytest.raises(ValueError):
            match_count(WIDE, (4,))
        with pytest.raises(ValueError):
            match_count(WIDE, (1, 1))

    def test_counts_sets_not_matchings(self):
        # both elements see both parts: two matchings per set, counted once
        square = SubsetSeq(2, (frozenset({1, 2}), frozenset({1, 2})))
        assert match_count(square, (1, 2)) == 1


class TestMatchPoly:
    def test_worked_example(self):
        assert match_poly(WIDE, 1) == Poly(3, {(1, 0, 0): 4, (0, 1, 0): 2, (0, 0, 1): 2})
        assert match_poly(WIDE, 2) == Poly(
            3, {(1, 1, 0): 5, (1, 0, 1): 5, (0, 1, 1): 3}
        )

    def test_r_zero(self):
        assert match_poly(WIDE, 0) == Poly.constant(3, 1)

    def test_r_out_of_range(self):
        with pytest.raises(ValueError):
            match_poly(WIDE, 5)
        with pytest.raises(ValueError):
            match_poly(WIDE, -1)

    @given(seqs(), st.data())
    @settings(max_examples=80, deadline=None)
    def test_multiaffine_and_degree(self, seq, data):
        r = data.draw(st.integers(0, seq.m))
        f = match_poly(seq, r)
        for exp, c in f.items():
            assert set(exp) <= {0, 1}
            assert sum(exp) == r
            assert c > 0


class TestBasisRestricted:
    def test_uniform_equals_plain(self):
        u24 = uniform_matroid(4, 2)
        for topic in combinations(range(1, 4), 2):
            assert basis_match_count(u24, WIDE, topic) == match_count(WIDE, topic)
        assert basis_match_poly(u24, WIDE) == match_poly(WIDE, 2)

    def test_restriction_bites(self):
        # only {1,2} is a basis, so sets containing 3 or 4 stop counting
        pm = Matroid(
            uniform_matroid(2, 2).underlying
        )
        with pytest.raises(ValueError):
            basis_match_count(pm, WIDE, (1,))  # ground sets differ

    def test_smaller_than_plain(self):
        mat = uniform_matroid(4, 2)
        assert basis_match_count(mat, WIDE, (1, 2)) <= match_count(WIDE, (1, 2))

    @given(seqs(max_m=3, max_n=3), st.data())
    @settings(max_examples=60, deadline=None)
    def test_uniform_equality_random(self, seq, data):
        r = data.draw(st.integers(0, seq.m))
        mat = uniform_matroid(seq.m, r)
        assert basis_match_poly(mat, seq) == match_poly(seq, r)


class TestStatTable:
    def test_rows_and_lookup(self):
        table = stat_table(WIDE, 2)
        assert table.rows == {(1, 2): 5, (1, 3): 5, (2, 3): 3}
        assert table.count((2, 3)) == 3
        assert table.count((9, 10)) == 0

    def test_json_sorted(self):
        rows = stat_table(WIDE, 2).to_json()
        assert rows == [
            {"T": [1, 2], "count": 5},
            {"T": [1, 3], "count": 5},
            {"T": [2, 3], "count": 3},
        ]

    def test_csv(self):
        text = stat_table(WIDE, 1).to_csv()
        lines = text.strip().splitlines()
        assert lines[0] == "T,count"
        assert lines[1:] == ["1,4", "2,2", "3,2"]

    def test_zero_rows_dropped(self):
        table = stat_table(SubsetSeq(1, (frozenset({1}), frozenset())), 1)
        assert table.rows == {(1,): 1}

    def test_r_bounds(self):
        with pytest.raises(ValueError):
            stat_table(WIDE, 4)
        assert stat_table(WIDE, 0).rows == {(): 1}

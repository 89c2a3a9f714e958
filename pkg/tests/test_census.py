"""Counting, enumeration and classification tests.

The frozen small counts come from the in-repo naive scan (the ground
truth oracle); nothing here is imported from outside tables.
"""

import pytest

from sumfree.census import (
    BudgetError,
    EnumerationBudgetError,
    census_classify,
    census_csv_lines,
    count_sum_free_bb,
    count_sum_free_naive,
    enumerate_sum_free,
    prop12_check,
    ratio_series,
)
from sumfree.rng import SplitMix64
from sumfree.sets import IntSet, is_sum_free, upper_third_start

# |SF(N)| for N = 1..12, frozen from count_sum_free_naive (full 2^N scans)
SMALL_COUNTS = [2, 3, 6, 9, 16, 24, 42, 61, 108, 151, 253, 369]


def test_naive_counts_small_n():
    for n, expect in enumerate(SMALL_COUNTS, start=1):
        assert count_sum_free_naive(IntSet.full_range(n)).count == expect


def test_naive_count_examples():
    assert count_sum_free_naive(IntSet.full_range(1)).count == 2
    assert count_sum_free_naive(IntSet.full_range(3)).count == 6
    assert count_sum_free_naive(IntSet.full_range(4)).count == 9
    res = count_sum_free_naive(IntSet.full_range(4))
    assert res.node_visits == 16 and res.method == "naive"


def test_naive_budget():
    with pytest.raises(BudgetError):
        count_sum_free_naive(IntSet.full_range(27))


def test_bb_matches_naive_and_closed_forms():
    for n, expect in enumerate(SMALL_COUNTS, start=1):
        assert count_sum_free_bb(IntSet.full_range(n)).count == expect
    for n in (6, 11, 20):
        assert count_sum_free_bb(IntSet.odds(n)).count == 2 ** ((n + 1) // 2)


def test_bb_matches_naive_on_random_universes():
    rng = SplitMix64(7)
    for _ in range(60):
        size = rng.below(15)
        universe = IntSet.from_elements(rng.subset(range(1, 31), size), 31)
        assert (count_sum_free_bb(universe).count
                == count_sum_free_naive(universe).count)


def test_bb_rejects_modular_and_zero():
    with pytest.raises(ValueError):
        count_sum_free_bb(IntSet.full_residues(7))
    with pytest.raises(ValueError):
        count_sum_free_bb(IntSet.from_elements([0, 3], 5))


def test_bb_worker_determinism():
    base = count_sum_free_bb(IntSet.full_range(24), workers=1)
    for w in (2, 4):
        res = count_sum_free_bb(IntSet.full_range(24), workers=w)
        assert res.count == base.count
        assert res.node_visits == base.node_visits


def test_enumerate_order_and_counts():
    seen = []
    n = enumerate_sum_free(IntSet.full_range(2), lambda s: seen.append(s.elements()))
    assert n == 3
    assert seen == [[], [1], [2]]
    assert enumerate_sum_free(IntSet.empty(5), lambda s: None) == 1
    count = enumerate_sum_free(IntSet.full_range(4), lambda s: None)
    assert count == 9
    # every visited set is sum-free and distinct
    seen = set()
    def visit(s):
        assert is_sum_free(s)
        assert s.bits not in seen
        seen.add(s.bits)
    assert enumerate_sum_free(IntSet.full_range(12), visit) == SMALL_COUNTS[11]


def test_enumerate_budget():
    with pytest.raises(EnumerationBudgetError) as err:
        enumerate_sum_free(IntSet.full_range(10), lambda s: None, budget=50)
    assert err.value.visited == 50


def test_census_examples():
    rec = census_classify(4)
    assert (rec.total, rec.odd_only, rec.upper_third, rec.overlap,
            rec.exceptional) == (9, 4, 6, 2, 1)
    assert rec.ratio == 9 / 4
    rec = census_classify(1)
    assert (rec.total, rec.odd_only, rec.upper_third, rec.overlap,
            rec.exceptional) == (2, 2, 2, 2, 0)
    for n in (5, 9, 14):
        assert census_classify(n).odd_only == 2 ** ((n + 1) // 2)


def test_census_matches_enumeration_classification():
    for n in (6, 12, 18, 24):
        rec = census_classify(n)
        start = upper_third_start(n)
        counts = {"total": 0, "odd": 0, "upper": 0, "both": 0, "neither": 0}
        def visit(s):
            counts["total"] += 1
            odd = all(x % 2 == 1 for x in s)
            upper = all(x >= start for x in s)
            counts["odd"] += odd
            counts["upper"] += upper
            counts["both"] += odd and upper
            counts["neither"] += (not odd) and (not upper)
        enumerate_sum_free(IntSet.full_range(n), visit)
        assert counts["total"] == rec.total
        assert counts["odd"] == rec.odd_only
        assert counts["upper"] == rec.upper_third
        assert counts["both"] == rec.overlap
        assert counts["neither"] == rec.exceptional


def test_census_monotone_totals():
    prev = 0
    for n in range(1, 16):
        cur = count_sum_free_bb(IntSet.full_range(n)).count
        assert cur >= prev
        prev = cur


def test_census_csv_format():
    lines = census_csv_lines([census_classify(4)])
    assert lines[0] == ("N,total,odd_only,upper_third,overlap,exceptional,"
                        "ratio,exceptional_ratio")
    assert lines[1] == "4,9,4,6,2,1,2.25,0.25"


def test_ratio_series_examples():
    series = ratio_series(3, 4)
    assert series[0][0] == 3 and abs(series[0][1] - 6 / 2**1.5) < 1e-12
    assert series[0][2] == "odd"
    assert series[1][1] == 9 / 4 and series[1][2] == "even"


def test_prop12_examples():
    import math

    rep = prop12_check([4, 10])
    vals = dict(rep.points)
    assert abs(vals[4] - math.log2(9) / 4) < 1e-12
    assert abs(vals[10] - math.log2(151) / 10) < 1e-12
    assert rep.passed

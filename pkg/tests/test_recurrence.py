import random

import pytest

from qfree import recurrence
from qfree.core import total_edges
from qfree.recurrence import (
    DEFAULT_SEEDS,
    LOWER_BOUNDS,
    bound_table,
    pigeonhole_q,
    step_edges,
    step_omitted,
)

PUBLISHED_UB = [56, 128, 352, 832, 1792, 4464, 10032, 21024, 49856, 108976,
            224976, 517552, 1111856, 2273680, 5124736, 10879712, 22105536,
            49096752, 103338816, 208999264, 459059616]

PUBLISHED_RATIOS = {  # printed 5-decimal ratio columns, k -> (lb, ub)
    7: ("0.11607", "0.12500"), 8: ("0.11621", "0.12500"),
    9: ("0.11632", "0.15278"), 10: ("0.11641", "0.16250"),
    11: ("0.11648", "0.15909"), 12: ("0.11650", "0.18164"),
    13: ("0.11651", "0.18840"), 14: ("0.11652", "0.18331"),
    15: ("0.11652", "0.20286"), 16: ("0.11652", "0.20786"),
    17: ("0.11652", "0.20193"), 18: ("0.11652", "0.21937"),
    19: ("0.11652", "0.22323"), 20: ("0.11652", "0.21684"),
    21: ("0.11652", "0.23273"), 22: ("0.11652", "0.23581"),
    23: ("0.11652", "0.22915"), 24: ("0.11652", "0.24387"),
    25: ("0.11652", "0.24638"), 26: ("0.11652", "0.23956"),
    27: ("0.11652", "0.25335"),
}


def test_step_edges_published_values(builtins):
    assert step_edges(72, 16, builtins["q3_aeo"].stats, 5) == 392
    assert step_edges(170, 29, builtins["c4_simple"].stats, 6) == 385
    assert step_edges(170, 29, builtins["q3_aeo"].stats, 6) == 873


def test_step_omitted_published_values(builtins):
    q4 = builtins["q4_aeo"].stats
    q5 = builtins["q5_aeo"].stats
    assert step_omitted(3, 0, q4, 4) == 56
    assert step_omitted(8, 0, q4, 5) == 128
    assert step_omitted(8, 0, q5, 5) == 320
    assert step_omitted(22, 3, q4, 6) == 352


def test_step_specializations(builtins):
    """The four printed recurrences as polynomial identities."""
    rng = random.Random(23)
    for _ in range(200):
        k = rng.randint(2, 20)
        e = rng.randint(0, total_edges(k))
        p = rng.randint(0, min(e, 1 << (k - 1)))
        t = 1 << (k - 2)
        assert step_edges(e, p, builtins["q3_aeo"].stats, k) == 4 * e + 5 * p + 3 * t
        assert step_edges(e, p, builtins["c4_simple"].stats, k) == 2 * e + p + t
        assert step_edges(e, p, builtins["q4_aeo"].stats, k) == 8 * e + 16 * p + 2 ** (k + 1)
        assert step_edges(e, p, builtins["q5_aeo"].stats, k) == 16 * e + 40 * p + 24 * t


def test_edge_omitted_duality(builtins):
    rng = random.Random(29)
    stats = [c.stats for c in builtins.values()]
    for _ in range(10_000):
        st = rng.choice(stats)
        k = rng.randint(2, 20)
        total_k = total_edges(k)
        class_size = 1 << (k - 1)
        e = rng.randint(0, total_k)
        p = rng.randint(max(0, e - (total_k - class_size)), min(e, class_size))
        c, q = total_k - e, class_size - p
        assert step_omitted(c, q, st, k) \
            == total_edges(k + st.m - 1) - step_edges(e, p, st, k)


def test_step_input_validation(builtins):
    st = builtins["q3_aeo"].stats
    with pytest.raises(ValueError):
        step_edges(3, 5, st, 4)
    with pytest.raises(ValueError):
        step_omitted(3, 5, st, 4)
    with pytest.raises(ValueError):
        step_edges(5, 1, st, 1)


def test_overflow_detected(builtins):
    with pytest.raises(OverflowError):
        step_edges(10, 0, builtins["q3_aeo"].stats, 90)


def test_pigeonhole_q():
    assert pigeonhole_q(56, 7) == 8
    assert pigeonhole_q(0, 12) == 0
    assert pigeonhole_q(832, 10) == 83


def test_bound_table_reproduces_published_values(builtins):
    rows = bound_table(DEFAULT_SEEDS, builtins["q4_aeo"].stats, 27)
    assert [r.k for r in rows] == list(range(7, 28))
    assert [r.upper_bound for r in rows] == PUBLISHED_UB
    assert [r.lower_bound for r in rows] == [LOWER_BOUNDS[k] for k in range(7, 28)]
    for r in rows:
        lb, ub = PUBLISHED_RATIOS[r.k]
        assert f"{r.lb_ratio:.5f}" == lb
        assert f"{r.ub_ratio:.5f}" == ub
        assert 0 <= r.ub_ratio <= 1 and 0 <= r.lb_ratio <= 1


def test_bound_table_zero_seed(builtins):
    rows = bound_table({7: 0}, builtins["q4_aeo"].stats, 10)
    assert rows[-1].k == 10 and rows[-1].upper_bound == 2 ** 8


def test_bound_table_monotone_in_seeds(builtins):
    st = builtins["q4_aeo"].stats
    base = {r.k: r.upper_bound for r in bound_table(DEFAULT_SEEDS, st, 27)}
    for seed_k in DEFAULT_SEEDS:
        bumped = dict(DEFAULT_SEEDS)
        bumped[seed_k] += 5
        for r in bound_table(bumped, st, 27):
            assert r.upper_bound >= base[r.k]


def test_bound_table_unreachable(builtins):
    with pytest.raises(ValueError, match="not reachable"):
        bound_table({7: 56}, builtins["q4_aeo"].stats, 11)


def test_format_table_contains_all_numbers(builtins):
    rows = bound_table(DEFAULT_SEEDS, builtins["q4_aeo"].stats, 27)
    text = recurrence.format_table(rows)
    for r in rows:
        assert f"{r.upper_bound:,}" in text

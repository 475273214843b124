import pytest

from ftgossip import builder
from ftgossip.core import CallSchedule, decompose_by_label
from ftgossip.verify import duration, is_k_fault_tolerant_bruteforce, is_k_fault_tolerant_flow, is_round_schedulable


def test_choose_w_accumulates_r_cyclically():
    g = CallSchedule(2, ((1, 0, 1), (2, 0, 1), (3, 0, 1)))
    dec = decompose_by_label(g, p=3, q=3, r=(1, 1, 1))
    assert builder.choose_w(dec, 0) == 3
    assert builder.choose_w(dec, 3) == 6
    dec2 = decompose_by_label(g, p=3, q=0, r=(2, 0, 1))
    # running sums 2, 2, 3, 5 -> first reaching k + q + 1 = 4 is w = 3
    assert builder.choose_w(dec2, 3) == 3


def test_composition_counts():
    g = CallSchedule(2, ((1, 0, 1), (2, 0, 1), (3, 0, 1)))
    dec = decompose_by_label(g, [{1}, {2, 3}], p=2, q=1, r=(1, 1))
    scheme, xi = builder.compose_scheme(g, dec, 1)
    # w = 2: one full copy (3 calls) plus the first block (1 call)
    assert (scheme.m, xi) == (4, 4)
    assert [c.t for c in scheme.calls] == [1, 2, 3, 4]


@pytest.mark.parametrize("n, k, calls", [(10, 0, 20), (10, 2, 30), (16, 4, 64), (12, 1, 30)])
def test_knodel_counts(n, k, calls):
    assert builder.build_knodel_ft(n, k).m == calls


@pytest.mark.parametrize("n, k", [(6, 0), (10, 3), (16, 2), (20, 4)])
def test_knodel_time_and_matchings(n, k):
    s = builder.build_knodel_ft(n, k)
    assert duration(s) == (n - 1).bit_length() + k
    assert is_round_schedulable(s)


def test_knodel_rejects_odd_and_negative():
    with pytest.raises(ValueError, match="knodel_ft_odd"):
        builder.build_knodel_ft(7, 0)
    with pytest.raises(ValueError):
        builder.build_knodel_ft(10, -1)


@pytest.mark.parametrize("n, k", [(3, 0), (5, 1), (7, 2), (11, 0)])
def test_odd_wrapper(n, k):
    s = builder.build_knodel_ft_odd(n, k)
    assert s.m == builder.knodel_prediction(n, k)
    assert is_k_fault_tolerant_flow(s, k).tolerant


def test_odd_wrapper_attach_vertex_is_configurable():
    s = builder.build_knodel_ft_odd(7, 1, attach=3)
    assert sum(1 for c in s.calls if 6 in (c.u, c.v)) == 4
    assert all({c.u, c.v} == {3, 6} for c in s.calls if 6 in (c.u, c.v))
    assert is_k_fault_tolerant_flow(s, 1).tolerant
    with pytest.raises(ValueError):
        builder.build_knodel_ft_odd(7, 1, attach=6)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_hypercube_is_a_gossip_base(n):
    s = builder.build_knodel_ft(n, 0)
    assert is_k_fault_tolerant_flow(s, 0).tolerant
    assert s.m == n // 2 * (n.bit_length() - 1)


@pytest.mark.parametrize("construction, n", [("knodel", 10), ("knodel-odd", 7), ("wheel", 9), ("wheel", 10)])
def test_counts_grow_with_k(construction, n):
    counts = [builder.build(construction, n, k).m for k in range(6)]
    assert all(a < b for a, b in zip(counts, counts[1:]))


@pytest.mark.parametrize("n, k", [(5, 1), (6, 1), (6, 2), (8, 1)])
def test_small_schemes_by_exhaustion(n, k):
    for construction in ("wheel", "knodel" if n % 2 == 0 else "knodel-odd"):
        s = builder.build(construction, n, k)
        assert is_k_fault_tolerant_bruteforce(s, k).tolerant


def test_wheel_count_matches_block_sum():
    assert builder.build_wheel_ft(11, 3).m == 45
    assert builder.build_wheel_ft(11, 1).m == 35
    assert builder.wheel_prediction(9, 4) == builder.build_wheel_ft(9, 4).m


def test_unknown_construction():
    with pytest.raises(ValueError):
        builder.build("hypercube", 8, 0)

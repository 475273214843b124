import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftgossip import schemeio
from ftgossip.core import (
    Call,
    CallSchedule,
    copy_of_subset,
    count_descents,
    decompose_by_label,
    edge_sum,
    empty_schedule,
    folded_path,
    lift_folded_path,
    path_from_calls,
    replicate,
)


@st.composite
def schedules(draw, max_n=7, max_m=15, max_label=6):
    n = draw(st.integers(2, max_n))
    calls = draw(
        st.lists(
            st.tuples(st.integers(1, max_label), st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                lambda c: c[1] != c[2]
            ),
            max_size=max_m,
        )
    )
    return CallSchedule(n, tuple(calls))


def test_calls_are_normalised_and_sorted():
    g = CallSchedule(4, ((3, 2, 1), (1, 3, 0), (3, 0, 1)))
    assert g.calls == (Call(1, 0, 3), Call(3, 0, 1), Call(3, 1, 2))
    assert g.labels == (1, 3)
    assert g.max_label == 3


@pytest.mark.parametrize(
    "n, calls",
    [
        (3, ((1, 0, 0),)),  # self loop
        (3, ((1, 0, 3),)),  # endpoint out of range
        (3, ((0, 0, 1),)),  # labels start at 1
        (-1, ()),
    ],
)
def test_invalid_schedules_rejected(n, calls):
    with pytest.raises(ValueError):
        CallSchedule(n, calls)


def test_edge_sum_shifts_second_operand_after_first():
    g1 = CallSchedule(3, ((1, 0, 1), (2, 1, 2)))
    g2 = CallSchedule(3, ((1, 0, 2),))
    s = edge_sum(g1, g2)
    assert s.calls == (Call(1, 0, 1), Call(2, 1, 2), Call(3, 0, 2))
    # indices of g1 survive unchanged, g2's follow at offset g1.m
    assert s.calls[:2] == g1.calls


def test_edge_sum_with_empty_schedule_is_identity():
    g = CallSchedule(3, ((2, 0, 1),))
    assert edge_sum(empty_schedule(3), g) == g
    assert edge_sum(g, empty_schedule(3)) == g


def test_replicate_copies():
    g = CallSchedule(2, ((1, 0, 1), (2, 0, 1)))
    r = replicate(g, 3)
    assert r.m == 6
    assert [c.t for c in r.calls] == [1, 2, 3, 4, 5, 6]
    assert copy_of_subset(g, [1], 3, 2) == frozenset({3})
    with pytest.raises(ValueError):
        replicate(g, 0)


def test_count_descents():
    assert count_descents([]) == 0
    assert count_descents([1, 2, 3]) == 0
    assert count_descents([3, 1, 2, 2, 1]) == 3


def test_folded_path_segments_and_number():
    # 0 -3- 1 -1- 2 -2- 3 -2- 0  : breaks at 3>1 and 2>=2
    g = CallSchedule(4, ((3, 0, 1), (1, 1, 2), (2, 2, 3), (2, 3, 0)))
    edges = [g.find(3, 0, 1), g.find(1, 1, 2), g.find(2, 2, 3), g.find(2, 3, 0)]
    p = folded_path(g, [0, 1, 2, 3, 0], edges)
    assert p.labels == (3, 1, 2, 2)
    assert p.folded_number == 2
    assert p.segments() == [(edges[0],), (edges[1], edges[2]), (edges[3],)]
    assert not p.is_ascending
    assert not p.is_simple


def test_folded_path_rejects_broken_walks():
    g = CallSchedule(3, ((1, 0, 1), (2, 1, 2)))
    with pytest.raises(ValueError):
        folded_path(g, [0, 2], [0])
    with pytest.raises(ValueError):
        folded_path(g, [0, 1], [])


def test_path_from_calls_follows_endpoints():
    g = CallSchedule(3, ((1, 0, 1), (2, 1, 2)))
    p = path_from_calls(g, 2, [1, 0])
    assert p.vertices == (2, 1, 0)
    assert p.folded_number == 1


def test_lift_places_each_segment_in_a_later_copy():
    g = CallSchedule(3, ((1, 0, 1), (2, 1, 2), (1, 1, 2)))
    p = folded_path(g, [0, 1, 2], [g.find(1, 0, 1), g.find(1, 1, 2)])
    assert p.folded_number == 1
    lifted = lift_folded_path(g, p, 3, 1)
    hg = replicate(g, 3)
    assert lifted.is_ascending
    assert [hg.calls[e].t for e in lifted.edges] == [1, 3]
    with pytest.raises(ValueError):
        lift_folded_path(g, p, 3, 3)  # second segment would need a fourth copy


def test_decomposition_checks_partition():
    g = CallSchedule(3, ((1, 0, 1), (2, 1, 2), (3, 0, 2)))
    dec = decompose_by_label(g, [{1}, {2, 3}], p=1, q=0, r=(1, 0))
    assert dec.sizes == (1, 2)
    dec.validate(g)
    with pytest.raises(ValueError):
        decompose_by_label(g, [{1}, {2}], p=1, q=0, r=(1, 0))  # label 3 uncovered
    with pytest.raises(ValueError):
        decompose_by_label(g, [{1}, {3}, {2}], p=1, q=0, r=(1, 0, 0))  # blocks out of label order


@given(schedules())
def test_text_format_round_trip(g):
    assert schemeio.loads(schemeio.dumps(g)) == g
    assert schemeio.from_json(schemeio.to_json(g)) == g


def test_manifest_survives_round_trip():
    g = CallSchedule(2, ((1, 0, 1),))
    text = schemeio.dumps(g, {"builder": "x", "n": 2, "k": 0, "xi": 1})
    assert text.splitlines()[0] == "# builder=x n=2 k=0 xi=1"
    assert schemeio.read_manifest(text) == {"builder": "x", "n": "2", "k": "0", "xi": "1"}


@pytest.mark.parametrize(
    "text",
    [
        "3 1\n1 0\n",  # short call line
        "3 2\n1 0 1\n",  # header count mismatch
        "3 2\n2 0 1\n1 1 2\n",  # labels not sorted
        "3 1\n1 0 5\n",  # endpoint out of range
        "x y\n",
        "",
    ],
)
def test_malformed_text_rejected(text):
    with pytest.raises(schemeio.SchemeFormatError):
        schemeio.loads(text)

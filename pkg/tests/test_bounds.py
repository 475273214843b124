"""Bound formulas checked against values worked out by hand from their closed forms."""

import pytest

from ftgossip import bounds


def test_bh_example():
    lo, up = bounds.bh_bounds(10, 1)
    # ceil(5/2 * 9) - 2*ceil(sqrt 10) + 1 = 23 - 8 + 1 ; floor(5/2 * 9) = 22
    assert (lo.value, up.value) == (16, 22)


def test_bh_overlap_reports_both_forms():
    lo, _, forms = bounds.bh_bounds(6, 4, verbose=True)
    assert set(forms) == {"k<=n-2", "k>=n-2"}
    assert lo.value == max(forms.values())


def test_bh_lower_is_clamped_at_zero():
    lo, _ = bounds.bh_bounds(2, 0)
    assert lo.value == 0


def test_haddad():
    assert bounds.haddad_bound(16, 4, p=2).value == 144
    best = bounds.haddad_bound(16, 4)
    assert best.value == min(bounds.haddad_bound(16, 4, p=p).value for p in range(1, 5))
    with pytest.raises(ValueError):
        bounds.haddad_bound(16, 4, p=5)


def test_haddad_powers_of_two():
    # m = 3, unit 12: (ceil(1/3) + 1) * 12 and (0 + 1) * 12 + 1 * (16 - 4)
    assert bounds.haddad_pow2_bound(8, 0).value == 24
    with pytest.raises(ValueError):
        bounds.haddad_pow2_bound(10, 0)


def test_hou_shigeno():
    lo, up = bounds.hou_shigeno_bounds(4, 2)
    assert (lo.value, up.value) == (8, 10)
    assert "small n" in up.params["note"]


def test_hn():
    assert bounds.hn_bounds(10, 3)[1].value == 70
    assert bounds.hn_bounds(16, 4)[1].value == 64
    assert bounds.hn_bounds(10, 1)[0].value == 19


def test_constructive_bounds():
    assert bounds.knodel_bound(10, 2).value == 30
    assert bounds.knodel_bound(11, 2).value == 36
    assert bounds.knodel_bound(16, 0).value == 32
    assert bounds.wheel_bound(11, 3).value == 45
    assert bounds.wheel_bound(11, 1).value == 35
    assert bounds.wheel_bound(12, 3).value == 49
    assert bounds.small_k_bound(10, 1).value == 22
    assert bounds.small_k_bound(10, 2).value == 27
    assert bounds.small_k_bound(5, 1).value == 9
    with pytest.raises(ValueError):
        bounds.small_k_bound(10, 3)


def test_wheel_xi_tracks_the_built_scheme():
    assert bounds.wheel_xi(11, 3).value == 45
    assert bounds.wheel_xi(13, 2).value == bounds.wheel_bound(13, 2).value


@pytest.mark.parametrize(
    "n, k, lower, upper, exact",
    [(10, 2, 6, 6, 6), (16, 3, 7, 7, 7), (11, 1, 5, 8, None)],
)
def test_time_bounds(n, k, lower, upper, exact):
    tb = bounds.time_bounds(n, k)
    assert (tb.lower, tb.upper, tb.exact) == (lower, upper, exact)


def test_table_rows_and_formats():
    rows = bounds.compare_table(range(10, 11), range(0, 4))
    assert len(rows) == 4
    csv_text = bounds.format_table(rows, "csv")
    assert csv_text.splitlines()[0].split(",") == bounds.COLUMNS
    assert len(csv_text.splitlines()) == 5
    assert len(bounds.format_table(rows, "text").splitlines()) == 5
    with pytest.raises(ValueError):
        bounds.compare_table([], [0])
    with pytest.raises(ValueError):
        bounds.format_table(rows, "xml")


def test_large_instance_ranking():
    row = bounds.bound_row(1001, 30)
    assert (row["knodel"], row["wheel"]) == (20062, 22500)
    assert row["this_best"] == 20062

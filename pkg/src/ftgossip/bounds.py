"""Published bounds on the minimum number of calls tau(n, k) and the minimum time T(n, k).

Everything is exact: integers, ``Fraction`` and integer square roots / bit
lengths for the logarithms.  Lower bounds that evaluate below zero are
clamped to zero.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, isqrt

from .knodel import ceil_log2, floor_log2, is_power_of_two


@dataclass(frozen=True)
class BoundResult:
    name: str
    kind: str  # "lower" or "upper"
    value: int
    params: dict = field(default_factory=dict)


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def _lower(name: str, value, **params) -> BoundResult:
    return BoundResult(name, "lower", max(0, int(value)), params)


def _upper(name: str, value, **params) -> BoundResult:
    return BoundResult(name, "upper", int(value), params)


def _check_nk(n: int, k: int) -> None:
    if n < 2:
        raise ValueError("n must be at least 2")
    if k < 0:
        raise ValueError("k must be non-negative")


def bh_bounds(n: int, k: int, verbose: bool = False):
    """Berman–Hawrylycz bounds.  At ``k == n - 2`` both lower forms apply; the larger is kept."""
    _check_nk(n, k)
    upper = _upper("berman_hawrylycz", floor(Fraction(2 * k + 3, 2) * (n - 1)))
    forms = {}
    if k <= n - 2:
        forms["k<=n-2"] = ceil(Fraction(k + 4, 2) * (n - 1)) - 2 * _ceil_sqrt(n) + 1
    if k >= n - 2:
        forms["k>=n-2"] = ceil(Fraction(k + 3, 2) * (n - 1)) - 2 * _ceil_sqrt(n)
    lower = _lower("berman_hawrylycz", max(forms.values()), forms=forms)
    if verbose:
        return lower, upper, forms
    return lower, upper


def _p_range(n: int) -> range:
    return range(1, floor_log2(n) + 1)


def _haddad_value(n: int, k: int, p: int, factor: int) -> int:
    lead = Fraction(k, 2) + factor * p
    body = (n - 1) + Fraction(n - 1, 2**p - 1) + 2**p
    return ceil(lead * body)


def haddad_bound(n: int, k: int, p: int | None = None) -> BoundResult:
    """Haddad–Roy–Schaffer ``(k/2 + 2p)(n - 1 + (n-1)/(2^p - 1) + 2^p)``; best ``p`` when omitted."""
    _check_nk(n, k)
    if p is not None:
        if p not in _p_range(n):
            raise ValueError(f"p must lie in 1..{floor_log2(n)}")
        return _upper("haddad", _haddad_value(n, k, p, 2), p=p)
    best = min(_p_range(n), key=lambda q: (_haddad_value(n, k, q, 2), q))
    return _upper("haddad", _haddad_value(n, k, best, 2), p=best)


def haddad_pow2_bound(n: int, k: int) -> BoundResult:
    _check_nk(n, k)
    if not is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    m = floor_log2(n)
    unit = n * m // 2
    first = (-(-(k + 1) // m) + 1) * unit
    second = ((k + 1) // m + 1) * unit + ((k + 1) % m) * (2 * n - 4)
    return _upper("haddad_pow2", min(first, second), terms=(first, second))


def hou_shigeno_bounds(n: int, k: int) -> tuple[BoundResult, BoundResult]:
    """``floor(n(k+2)/2) <= tau <= n(n-1)/2 + ceil(nk/2)``; the upper bound targets small ``n``."""
    _check_nk(n, k)
    lower = _lower("hou_shigeno", n * (k + 2) // 2)
    upper = _upper("hou_shigeno", n * (n - 1) // 2 + -(-n * k // 2), note="intended for small n / large k")
    return lower, upper


def hn_bounds(n: int, k: int) -> tuple[BoundResult, BoundResult]:
    _check_nk(n, k)
    if is_power_of_two(n):
        up = n * floor_log2(n) // 2 + n * k // 2
    else:
        up = 2 * n * floor_log2(n) + n * -(-(k - 1) // 2)
    low = -(-(3 * n - 5) // 2) + ceil(Fraction(n * k + (n + 1) // 2 - floor_log2(n), 2))
    return _lower("hasunuma_nagamochi", low), _upper("hasunuma_nagamochi", up)


def hn_factor_bound(n: int, k: int, p: int | None = None) -> BoundResult:
    """Haddad form with the factor ``(k/2 + p)``."""
    _check_nk(n, k)
    if p is not None:
        if p not in _p_range(n):
            raise ValueError(f"p must lie in 1..{floor_log2(n)}")
        return _upper("hn_factor", _haddad_value(n, k, p, 1), p=p)
    best = min(_p_range(n), key=lambda q: (_haddad_value(n, k, q, 1), q))
    return _upper("hn_factor", _haddad_value(n, k, best, 1), p=best)


def knodel_bound(n: int, k: int) -> BoundResult:
    _check_nk(n, k)
    if n % 2 == 0:
        value = n // 2 * ceil_log2(n) + n * k // 2
    else:
        value = (n - 1) // 2 * ceil_log2(n - 1) + (n - 1) * k // 2 + 2 * (k + 1)
    return _upper("knodel", value)


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def wheel_bound(n: int, k: int) -> BoundResult:
    """Published wheel formulas, split on ``k mod 3``."""
    _check_nk(n, k)
    if (n % 2 and n < 5) or (n % 2 == 0 and n < 6):
        raise ValueError(f"wheel bound needs n >= 5 (odd) or n >= 6 (even), got {n}")
    c = k % 3
    if n % 2:
        slope = Fraction(2, 3) * (n - 1)
        const = [Fraction(5, 2) * (n - 1), Fraction(7, 2) * (n - 1), Fraction(4) * (n - 1)][c]
    else:
        slope = Fraction(2 * n - 1, 3)
        const = [Fraction(5, 2) * n - 4, Fraction(7, 2) * n - 5, Fraction(4 * n - 5)][c]
    return _upper("wheel", _exact_int(slope * (k - c) + const))


def wheel_xi(n: int, k: int) -> BoundResult:
    """Size of the scheme the wheel construction actually emits (block sizes summed)."""
    from .builder import wheel_prediction

    _check_nk(n, k)
    return _upper("wheel_xi", wheel_prediction(n, k))


def small_k_bound(n: int, k: int) -> BoundResult:
    if k == 1:
        return _upper("small_k", 2 * n - 3 + n // 2)
    if k == 2:
        return _upper("small_k", 3 * n - 3)
    raise ValueError("small_k_bound covers k = 1 and k = 2 only")


@dataclass(frozen=True)
class TimeBounds:
    n: int
    k: int
    lower: int
    upper: int
    exact: int | None
    parts: dict


def time_bounds(n: int, k: int) -> TimeBounds:
    """Gargano and Haddad time bounds; the value is exact (``ceil(log2 n) + k``) for even ``n``."""
    _check_nk(n, k)
    m = ceil_log2(n)
    parts = {"gargano_lower": m + k}
    if is_power_of_two(n):
        parts["gargano_upper"] = m + k
        parts["haddad_upper"] = m + -(-(k + 1) // m) * m
    else:
        parts["gargano_upper"] = m + 3 * k + 1
        parts["haddad_upper"] = 8 * m + 2 * m * -(-(k + 1) // -(-m // 2))
    if n % 2 == 0:
        parts["knodel_upper"] = m + k
    upper = min(v for key, v in parts.items() if key.endswith("upper"))
    lower = parts["gargano_lower"]
    exact = m + k if n % 2 == 0 else None
    return TimeBounds(n, k, lower, upper, exact, parts)


COLUMNS = [
    "n", "k",
    "bh_lower", "bh_upper", "haddad", "haddad_pow2", "hs_lower", "hs_upper",
    "hn_lower", "hn_upper", "hn_factor", "knodel", "wheel", "small_k",
    "best_prior", "this_best", "this_strictly_best",
]


def bound_row(n: int, k: int) -> dict:
    bh_lo, bh_up = bh_bounds(n, k)
    hs_lo, hs_up = hou_shigeno_bounds(n, k)
    hn_lo, hn_up = hn_bounds(n, k)
    row = {
        "n": n,
        "k": k,
        "bh_lower": bh_lo.value,
        "bh_upper": bh_up.value,
        "haddad": haddad_bound(n, k).value,
        "haddad_pow2": haddad_pow2_bound(n, k).value if is_power_of_two(n) else None,
        "hs_lower": hs_lo.value,
        "hs_upper": hs_up.value,
        "hn_lower": hn_lo.value,
        "hn_upper": hn_up.value,
        "hn_factor": hn_factor_bound(n, k).value,
        "knodel": knodel_bound(n, k).value,
        "wheel": wheel_bound(n, k).value if n >= 5 and (n % 2 or n >= 6) else None,
        "small_k": small_k_bound(n, k).value if k in (1, 2) else None,
    }
    prior = [row[c] for c in ("bh_upper", "haddad", "haddad_pow2", "hs_upper", "hn_upper", "hn_factor")]
    ours = [row[c] for c in ("knodel", "wheel", "small_k")]
    row["best_prior"] = min(v for v in prior if v is not None)
    row["this_best"] = min(v for v in ours if v is not None)
    row["this_strictly_best"] = row["this_best"] < row["best_prior"]
    return row


def compare_table(n_range, k_range) -> list[dict]:
    ns, ks = sorted(set(n_range)), sorted(set(k_range))
    if not ns or not ks:
        raise ValueError("ranges must be non-empty")
    return [bound_row(n, k) for n in ns for k in ks]


def format_table(rows: list[dict], fmt: str = "text") -> str:
    def cell(v) -> str:
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "*" if v else ""
        return str(v)

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([cell(row[c]) for c in COLUMNS])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    grid = [COLUMNS] + [[cell(row[c]) for c in COLUMNS] for row in rows]
    widths = [max(len(r[i]) for r in grid) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in grid) + "\n"

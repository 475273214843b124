"""Wheel schedules and their three-path families.

Hub ``u`` is node 0, rim vertices ``v_i`` and ``v'_i`` (``i = 1..K``) are
nodes ``2i - 1`` and ``2i``, and for even ``n`` the second hub ``u'`` is
node ``n - 1``.  Rim indices wrap modulo ``K``.

Odd ``n = 2K + 1``:  chords ``(v_i, v'_i)`` label 1, ``(v'_i, u)`` label 2,
``(v_i, u)`` label 3, ``(v'_i, v_{i+1})`` label 4.

Even ``n = 2K + 2``: chords 1, ``(v'_i, u)`` 2, ``(u, u')`` 3,
``(v_i, u')`` 4, ``(u, u')`` 5, ``(v'_i, v_{i+1})`` 6.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .core import CallSchedule, Decomposition, FoldedPath, decompose_by_label, folded_path
from .paths import min_folded_family


class WheelVertex(NamedTuple):
    kind: str  # "u", "u'", "v" or "v'"
    i: int = 0


HUB = WheelVertex("u")
HUB2 = WheelVertex("u'")


def rim_size(n: int) -> int:
    return (n - 1) // 2 if n % 2 else (n - 2) // 2


def _check(n: int) -> None:
    if n % 2 and n < 5:
        raise ValueError(f"odd wheels need n >= 5, got {n}")
    if not n % 2 and n < 6:
        raise ValueError(f"even wheels need n >= 6, got {n}")


def to_node(n: int, v: WheelVertex) -> int:
    K = rim_size(n)
    if v.kind == "u":
        return 0
    if v.kind == "u'":
        if n % 2:
            raise ValueError("odd wheels have no second hub")
        return n - 1
    i = (v.i - 1) % K + 1
    return 2 * i - 1 if v.kind == "v" else 2 * i


def from_node(n: int, x: int) -> WheelVertex:
    if x == 0:
        return HUB
    if not n % 2 and x == n - 1:
        return HUB2
    return WheelVertex("v", (x + 1) // 2) if x % 2 else WheelVertex("v'", x // 2)


def _rim_calls(n: int, labels: dict[str, int]) -> list[tuple[int, int, int]]:
    K = rim_size(n)
    v = lambda i: to_node(n, WheelVertex("v", i))  # noqa: E731
    vp = lambda i: to_node(n, WheelVertex("v'", i))  # noqa: E731
    hub_v = 0 if n % 2 else n - 1
    calls = []
    for i in range(1, K + 1):
        calls.append((labels["chord"], v(i), vp(i)))
        calls.append((labels["spoke'"], vp(i), 0))
        calls.append((labels["spoke"], v(i), hub_v))
        calls.append((labels["rim"], vp(i), v(i + 1)))
    return calls


def generate_wheel_odd(n: int) -> tuple[CallSchedule, Decomposition]:
    if n % 2 == 0:
        raise ValueError("generate_wheel_odd needs odd n")
    _check(n)
    g = CallSchedule(n, tuple(_rim_calls(n, {"chord": 1, "spoke'": 2, "spoke": 3, "rim": 4})))
    return g, decompose_by_label(g, [{1}, {2, 3}, {4}], p=3, q=3, r=(1, 1, 1))


def even_wheel_q(n: int) -> int:
    """Folded-number budget of the even wheel, as measured by exhaustive family search.

    Once the rim has at least five positions, rim pairs two steps apart
    need total folded number 4; composing with 3 loses 3-fault tolerance.
    """
    return 3 if rim_size(n) <= 4 else 4


def generate_wheel_even(n: int) -> tuple[CallSchedule, Decomposition]:
    if n % 2:
        raise ValueError("generate_wheel_even needs even n")
    _check(n)
    calls = _rim_calls(n, {"chord": 1, "spoke'": 2, "spoke": 4, "rim": 6})
    calls += [(3, 0, n - 1), (5, 0, n - 1)]
    g = CallSchedule(n, tuple(calls))
    return g, decompose_by_label(g, [{1}, {2, 3, 4, 5}, {6}], p=3, q=even_wheel_q(n), r=(1, 1, 1))


def generate_wheel(n: int) -> tuple[CallSchedule, Decomposition]:
    return generate_wheel_odd(n) if n % 2 else generate_wheel_even(n)


def _path(g: CallSchedule, n: int, hops: list) -> FoldedPath:
    """``hops`` alternates vertices and labels: ``[x0, t1, x1, t2, x2, ...]``."""
    verts = [to_node(n, x) for x in hops[::2]]
    labels = hops[1::2]
    edges = [g.find(t, a, b) for t, a, b in zip(labels, verts, verts[1:])]
    return folded_path(g, verts, edges)


def _generic_catalogue(g: CallSchedule, n: int, s: WheelVertex, t: WheelVertex) -> list[FoldedPath] | None:
    """The explicit odd-wheel families; ``None`` for pairs they do not cover."""
    K = rim_size(n)
    u = HUB
    v = lambda i: WheelVertex("v", (i - 1) % K + 1)  # noqa: E731
    vp = lambda i: WheelVertex("v'", (i - 1) % K + 1)  # noqa: E731
    if s.kind == "v" and t == u:
        i = s.i
        return [
            _path(g, n, [v(i), 3, u]),
            _path(g, n, [v(i), 1, vp(i), 2, u]),
            _path(g, n, [v(i), 4, vp(i - 1), 2, u]),
        ]
    if s == u and t.kind == "v'":
        i = t.i
        return [
            _path(g, n, [u, 2, vp(i)]),
            _path(g, n, [u, 3, v(i), 1, vp(i)]),
            _path(g, n, [u, 3, v(i + 1), 4, vp(i)]),
        ]
    if s.kind not in ("v", "v'") or t.kind not in ("v", "v'"):
        return None
    i, j = s.i, t.i
    if (j - i) % K in {(-1) % K, 0, 1 % K, 2 % K}:
        return None
    if s.kind == "v" and t.kind == "v":
        return [
            _path(g, n, [v(i), 3, u, 2, vp(j - 1), 4, v(j)]),
            _path(g, n, [v(i), 1, vp(i), 2, u, 3, v(j + 1), 4, vp(j), 1, v(j)]),
            _path(g, n, [v(i), 4, vp(i - 1), 2, u, 3, v(j)]),
        ]
    if s.kind == "v" and t.kind == "v'":
        return [
            _path(g, n, [v(i), 3, u, 2, vp(j)]),
            _path(g, n, [v(i), 1, vp(i), 2, u, 3, v(j), 1, vp(j)]),
            _path(g, n, [v(i), 4, vp(i - 1), 2, u, 3, v(j + 1), 4, vp(j)]),
        ]
    if s.kind == "v'" and t.kind == "v":
        return [
            _path(g, n, [vp(i), 2, u, 3, v(j + 1), 4, vp(j), 1, v(j)]),
            _path(g, n, [vp(i), 1, v(i), 3, u, 2, vp(j - 1), 4, v(j)]),
            _path(g, n, [vp(i), 4, v(i + 1), 1, vp(i + 1), 2, u, 3, v(j)]),
        ]
    return [
        _path(g, n, [vp(i), 2, u, 3, v(j), 1, vp(j)]),
        _path(g, n, [vp(i), 1, v(i), 3, u, 2, vp(j)]),
        _path(g, n, [vp(i), 4, v(i + 1), 1, vp(i + 1), 2, u, 3, v(j + 1), 4, vp(j)]),
    ]


def _rotate(n: int, x: int, c: int) -> int:
    w = from_node(n, x)
    if w.kind in ("u", "u'"):
        return x
    return to_node(n, WheelVertex(w.kind, w.i + c))


@lru_cache(maxsize=None)
def _searched_families(n: int) -> dict[tuple[int, int], tuple[FoldedPath, ...]]:
    """Min-cost families from the hubs and from ``v_1``, ``v'_1``; other rim sources by rotation.

    The one-last-call-per-block constraint is tried first; pairs where it is
    infeasible (every call at a hub lies in the middle block) fall back to
    the unconstrained optimum so the family check can report them.
    """
    g, dec = generate_wheel(n)
    sources = [0, 1, 2] + ([n - 1] if n % 2 == 0 else [])
    out = {}
    for s in sources:
        for t in range(n):
            if s == t:
                continue
            fam = min_folded_family(g, s, t, 3, dec, dec.r)
            if len(fam) < 3:
                fam = min_folded_family(g, s, t, 3)
            out[(s, t)] = tuple(fam)
    return out


def wheel_path_catalogue(n: int, source: WheelVertex, target: WheelVertex) -> list[FoldedPath]:
    """Three edge-disjoint folded ascending paths from ``source`` to ``target``.

    Odd wheels use the explicit families wherever they apply.  The remaining
    pairs (rim vertices close together, hub-related pairs, all even wheels)
    come from a min-cost-flow search that minimises total folded number.
    """
    _check(n)
    g, _ = generate_wheel(n)
    if to_node(n, source) == to_node(n, target):
        raise ValueError("source and target must differ")
    if n % 2:
        fam = _generic_catalogue(g, n, source, target)
        if fam is not None:
            return fam
    s, t = to_node(n, source), to_node(n, target)
    table = _searched_families(n)
    if (s, t) in table:
        return list(table[(s, t)])
    # s is a rim vertex other than v_1, v'_1: rotate it onto index 1
    c = 1 - from_node(n, s).i
    base = table[(_rotate(n, s, c), _rotate(n, t, c))]
    out = []
    for path in base:
        verts = [_rotate(n, x, -c) for x in path.vertices]
        edges = [g.find(lab, a, b) for lab, a, b in zip(path.labels, verts, verts[1:])]
        out.append(folded_path(g, verts, edges))
    return out


def all_families(n: int) -> dict[tuple[int, int], list[FoldedPath]]:
    return {
        (s, t): wheel_path_catalogue(n, from_node(n, s), from_node(n, t))
        for s in range(n)
        for t in range(n)
        if s != t
    }

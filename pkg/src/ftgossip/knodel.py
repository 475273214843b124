"""Knödel graphs ``W(Δ, n)`` and their ascending-path structure.

Vertex ``(side, pos)`` with side 1 or 2 and ``0 <= pos < n/2`` is node
``pos`` (side 1) or ``n/2 + pos`` (side 2).  The label-``l`` calls join
``(1, j)`` and ``(2, (j + 2**(l-1) - 1) mod n/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import CallSchedule, Decomposition, FoldedPath, decompose_by_label, edge_sum, folded_path
from .paths import min_folded_family


class NoAscendingPath(ValueError):
    pass


class KnodelVertex(NamedTuple):
    side: int
    pos: int


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _check_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"Knödel graphs need an even n >= 2, got {n}")


def to_node(n: int, v: KnodelVertex) -> int:
    side, pos = v
    return pos if side == 1 else n // 2 + pos


def from_node(n: int, x: int) -> KnodelVertex:
    h = n // 2
    return KnodelVertex(1, x) if x < h else KnodelVertex(2, x - h)


def generate_knodel(n: int, delta: int) -> CallSchedule:
    _check_even(n)
    if not 1 <= delta <= max(1, ceil_log2(n)):
        raise ValueError(f"degree must lie in 1..{max(1, ceil_log2(n))} for n={n}")
    h = n // 2
    calls = tuple((l, j, h + (j + 2 ** (l - 1) - 1) % h) for l in range(1, delta + 1) for j in range(h))
    return CallSchedule(n, calls)


def interval(n: int, target: KnodelVertex, source: KnodelVertex) -> int:
    """Cyclic offset that an ascending path from ``source`` must cover to reach ``target``."""
    h = n // 2
    alpha, beta = target
    _, delta = source
    if alpha == 1:
        return delta - beta if delta >= beta else h - abs(delta - beta)
    return abs(delta - beta) if delta <= beta else h - (delta - beta)


def _step(d: int) -> int:
    # smallest 2**x - 1 that is >= d; d = 0 gives 0
    return 2 ** ceil_log2(d + 1) - 1


@dataclass(frozen=True)
class PathRecursionState:
    a: tuple[int, ...]
    b: tuple[int, ...]
    f: tuple[int, ...]

    @property
    def L(self) -> int:
        return len(self.a)


def path_recursion(n: int, source: KnodelVertex, target: KnodelVertex) -> PathRecursionState:
    """Side, position and step sequences of the ascending path, built backwards from ``target``.

    ``f[i]`` is the offset of the call joining ``(a[i], b[i])`` to the
    previous vertex, so that call carries label ``log2(f[i] + 1) + 1``.  At
    ``b == δ`` the required offset is 0 whatever the side (the published
    case split sends ``a = 1, b = δ`` to the wrap-around branch, which would
    overshoot by a full turn).
    """
    _check_even(n)
    h = n // 2
    D = floor_log2(n)
    R = interval(n, target, source)
    if R > 2 ** (D - 1) - 1:
        raise NoAscendingPath(f"no ascending path from {tuple(source)} to {tuple(target)}: interval {R}")
    gamma, delta = source
    alpha, beta = target
    a: list[int] = []
    b: list[int] = []
    f: list[int] = []
    side, pos = alpha, beta
    total = 0
    while True:
        nxt_side = 2 if side == 1 else 1
        # side 1 reaches side 2 at pos + step; side 2 reaches side 1 at pos - step
        need = (delta - pos) % h if side == 1 else (pos - delta) % h
        step = _step(need)
        if f and step >= f[-1]:
            raise AssertionError(f"recursion did not shrink at n={n}, {source} -> {target}")
        f.append(step)
        total += step if len(f) % 2 else -step
        pos = (beta + total) % h if alpha == 1 else (h + beta - total) % h
        side = nxt_side
        a.append(side)
        b.append(pos)
        if side == gamma and pos == delta:
            return PathRecursionState(tuple(a), tuple(b), tuple(f))
        if len(f) > D:
            raise AssertionError(f"recursion exceeded {D} steps at n={n}, {source} -> {target}")


@lru_cache(maxsize=None)
def knodel_base(n: int) -> CallSchedule:
    """``W(floor(log2 n), n)``, the graph every Knödel construction starts from."""
    return generate_knodel(n, floor_log2(n))


def ascending_path(n: int, source: KnodelVertex, target: KnodelVertex) -> FoldedPath:
    """Explicit strictly ascending path in ``W(floor(log2 n), n)`` (empty when source == target)."""
    g = knodel_base(n)
    s, t = to_node(n, source), to_node(n, target)
    if s == t:
        return folded_path(g, [s], [])
    rec = path_recursion(n, source, target)
    chain = [to_node(n, KnodelVertex(x, y)) for x, y in zip(reversed(rec.a), reversed(rec.b))] + [t]
    labels = [floor_log2(step + 1) + 1 for step in reversed(rec.f)]
    edges = [g.find(lab, x, y) for lab, x, y in zip(labels, chain, chain[1:])]
    path = folded_path(g, chain, edges)
    if not path.is_ascending:
        raise AssertionError(f"recursion produced a non-ascending path {path}")
    return path


def reachable_set(n: int, delta: int, target: KnodelVertex) -> frozenset[KnodelVertex]:
    """Vertices with an ascending path to ``target`` in ``W(delta, n)``."""
    _check_even(n)
    h = n // 2
    side, beta = target
    sign = 1 if side == 1 else -1
    return frozenset(KnodelVertex(g, (beta + sign * d) % h) for g in (1, 2) for d in range(2 ** (delta - 1)))


def gossip_base(n: int) -> CallSchedule:
    """``W(log2 n, n)`` for powers of two, else ``W(floor(log2 n), n) + W(1, n)``."""
    _check_even(n)
    if is_power_of_two(n):
        return generate_knodel(n, floor_log2(n))
    return edge_sum(knodel_base(n), generate_knodel(n, 1))


def staging_sets(n: int) -> dict[int, frozenset[KnodelVertex]]:
    """Disjoint vertex sets ``V(Δ)`` that route folded paths into ``(1, 0)``."""
    _check_even(n)
    h = n // 2
    out = {1: frozenset({KnodelVertex(2, 0)})}
    for d in range(2, floor_log2(n) + 1):
        half = 2 ** (d - 2)
        out[d] = frozenset(KnodelVertex(i, (half + j) % h) for i in (1, 2) for j in range(half))
    return out


def knodel_decomposition(n: int) -> Decomposition:
    """One block per label of ``W(floor(log2 n), n)``, with ``p = q = floor(log2 n)`` and ``r = 1``."""
    g = knodel_base(n)
    D = floor_log2(n)
    return decompose_by_label(g, p=D, q=D, r=(1,) * D)


# Label-preserving automorphisms: rotation (i, j) -> (i, j + c) and the side swap
# (1, j) -> (2, -j), (2, j) -> (1, -j).


def _to_canonical(n: int, target: KnodelVertex):
    """Node map sending ``target`` to ``(1, 0)`` together with its inverse."""
    h = n // 2
    side, beta = target

    def fwd(v: KnodelVertex) -> KnodelVertex:
        s, j = v
        if side == 1:
            return KnodelVertex(s, (j - beta) % h)
        return KnodelVertex(3 - s, (beta - j) % h)

    def back(v: KnodelVertex) -> KnodelVertex:
        s, j = v
        if side == 1:
            return KnodelVertex(s, (j + beta) % h)
        return KnodelVertex(3 - s, (beta - j) % h)

    return fwd, back


@lru_cache(maxsize=None)
def _families_into_origin(n: int) -> dict[int, tuple[FoldedPath, ...]]:
    g = knodel_base(n)
    D = floor_log2(n)
    return {s: tuple(min_folded_family(g, s, 0, D)) for s in range(1, n)}


def folded_path_family(n: int, source: KnodelVertex, target: KnodelVertex) -> list[FoldedPath]:
    """``floor(log2 n)`` edge-disjoint folded ascending paths from ``source`` to ``target``.

    Families into ``(1, 0)`` are optimal min-cost-flow families (least total
    folded number); other targets are reached through a graph automorphism.
    """
    _check_even(n)
    if tuple(source) == tuple(target):
        return []
    g = knodel_base(n)
    fwd, back = _to_canonical(n, KnodelVertex(*target))
    canon_source = to_node(n, fwd(KnodelVertex(*source)))
    out = []
    for path in _families_into_origin(n)[canon_source]:
        verts = [to_node(n, back(from_node(n, x))) for x in path.vertices]
        edges = [g.find(lab, x, y) for lab, x, y in zip(path.labels, verts, verts[1:])]
        out.append(folded_path(g, verts, edges))
    return out


def all_families(n: int) -> dict[tuple[int, int], list[FoldedPath]]:
    """Families for every ordered pair of distinct nodes, keyed by node ids."""
    return {
        (s, t): folded_path_family(n, from_node(n, s), from_node(n, t))
        for s in range(n)
        for t in range(n)
        if s != t
    }

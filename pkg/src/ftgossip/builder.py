"""Fault-tolerant schemes composed from a base graph and a label-ordered decomposition.

Given blocks ``F(0) .. F(l-1)`` and path-family parameters ``(p, q, r)``,
pick the least ``w`` with ``sum(r[i % l] for i <= w) >= k + q + 1`` and
emit ``h = w // l`` full copies of the base followed by blocks
``F(0) .. F(w - h*l)``.  The call count is ``sum(|F(i % l)| for i <= w)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Call, CallSchedule, Decomposition, decompose_by_label, edge_sum, empty_schedule, replicate
from .knodel import ceil_log2, floor_log2, is_power_of_two, knodel_base, knodel_decomposition
from .wheel import generate_wheel


class PredictionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class SchemeRecipe:
    base: CallSchedule
    decomposition: Decomposition
    k: int
    w: int

    @property
    def h(self) -> int:
        return self.w // self.decomposition.l

    @property
    def xi(self) -> int:
        sizes = self.decomposition.sizes
        return sum(sizes[i % len(sizes)] for i in range(self.w + 1))


def choose_w(decomposition: Decomposition, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    r, q = decomposition.r, decomposition.q
    if r is None or q is None:
        raise ValueError("decomposition carries no (q, r) parameters")
    if not any(r):
        raise ValueError("all r_i are zero")
    need = k + q + 1
    total = 0
    w = 0
    while True:
        total += r[w % len(r)]
        if total >= need:
            return w
        w += 1


def recipe(base: CallSchedule, decomposition: Decomposition, k: int) -> SchemeRecipe:
    decomposition.validate(base)
    return SchemeRecipe(base, decomposition, k, choose_w(decomposition, k))


def compose_scheme(base: CallSchedule, decomposition: Decomposition, k: int) -> tuple[CallSchedule, int]:
    """Compose ``h`` copies of ``base`` and a partial copy; return the scheme and its predicted size."""
    rec = recipe(base, decomposition, k)
    tail_blocks = range(rec.w - rec.h * decomposition.l + 1)
    tail = base.subset(e for i in tail_blocks for e in decomposition.blocks[i])
    head = replicate(base, rec.h) if rec.h else empty_schedule(base.n)
    scheme = edge_sum(head, tail)
    if scheme.m != rec.xi:
        raise PredictionMismatch(f"built {scheme.m} calls, predicted {rec.xi}")
    return scheme, rec.xi


def hypercube_base(n: int) -> CallSchedule:
    """Hypercube on ``n = 2**m`` nodes, dimension ``d`` calls carrying label ``d + 1``."""
    if not is_power_of_two(n) or n < 2:
        raise ValueError(f"hypercube needs a power of two, got {n}")
    m = floor_log2(n)
    return CallSchedule(n, tuple((d + 1, x, x ^ (1 << d)) for d in range(m) for x in range(n) if not x >> d & 1))


def hypercube_decomposition(n: int) -> Decomposition:
    m = floor_log2(n)
    return decompose_by_label(hypercube_base(n), p=m, q=m - 1, r=(1,) * m)


def knodel_prediction(n: int, k: int) -> int:
    if n % 2:
        return (n - 1) // 2 * ceil_log2(n - 1) + (n - 1) * k // 2 + 2 * (k + 1)
    return n // 2 * ceil_log2(n) + n * k // 2


def build_knodel_ft(n: int, k: int) -> CallSchedule:
    """k-fault-tolerant scheme with ``(n/2) ceil(log2 n) + n k / 2`` calls for even ``n``.

    Powers of two use the cyclically labeled hypercube (``q = log2 n - 1``);
    the Knödel base with its optimal families needs ``q = log2 n`` there and
    would cost one extra round.
    """
    if n < 2 or n % 2:
        raise ValueError(f"build_knodel_ft needs even n >= 2 (use build_knodel_ft_odd for odd n), got {n}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if is_power_of_two(n):
        scheme, xi = compose_scheme(hypercube_base(n), hypercube_decomposition(n), k)
    else:
        scheme, xi = compose_scheme(knodel_base(n), knodel_decomposition(n), k)
    if xi != knodel_prediction(n, k):
        raise PredictionMismatch(f"n={n} k={k}: built {xi}, bound {knodel_prediction(n, k)}")
    return scheme


def build_knodel_ft_odd(n: int, k: int, attach: int = 0) -> CallSchedule:
    """Even scheme on ``n - 1`` nodes wrapped by ``k + 1`` calls to the extra node before and after.

    The extra node is ``n - 1``; it talks to node ``attach`` (default: the
    Knödel vertex ``(1, 0)``).
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"build_knodel_ft_odd needs odd n >= 3, got {n}")
    if not 0 <= attach < n - 1:
        raise ValueError("attach must be one of the first n - 1 nodes")
    inner = build_knodel_ft(n - 1, k).with_nodes(n)
    link = replicate(CallSchedule(n, (Call(1, attach, n - 1),)), k + 1)
    scheme = edge_sum(edge_sum(link, inner), link)
    if scheme.m != knodel_prediction(n, k):
        raise PredictionMismatch(f"n={n} k={k}: built {scheme.m}, bound {knodel_prediction(n, k)}")
    return scheme


def build_wheel_ft(n: int, k: int) -> CallSchedule:
    g, dec = generate_wheel(n)
    scheme, _ = compose_scheme(g, dec, k)
    return scheme


def wheel_prediction(n: int, k: int) -> int:
    g, dec = generate_wheel(n)
    return recipe(g, dec, k).xi


CONSTRUCTIONS = {
    "knodel": build_knodel_ft,
    "knodel-odd": build_knodel_ft_odd,
    "wheel": build_wheel_ft,
}


def build(construction: str, n: int, k: int) -> CallSchedule:
    try:
        fn = CONSTRUCTIONS[construction]
    except KeyError:
        raise ValueError(f"unknown construction {construction!r}") from None
    return fn(n, k)

"""Search for edge-disjoint folded ascending path families.

The folded number of a walk is its number of descents (consecutive calls
whose label does not increase), so it is additive along the walk and a
family of ``p`` edge-disjoint walks minimising the total folded number is a
min-cost flow.  States are ``(node, label of the call used to arrive)``;
leaving a state through a call of label ``t`` costs 1 when ``t`` is not
larger than the arrival label.  Each call is a unit-capacity gadget shared
by both traversal directions.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import networkx as nx

from .core import CallSchedule, Decomposition, FoldedPath, folded_path

_S = ("S",)
_T = ("T",)


def _loop_erase(vertices: list[int], edges: list[int]) -> tuple[list[int], list[int]]:
    """Cut every closed sub-walk; this never adds a descent."""
    out_v = [vertices[0]]
    out_e: list[int] = []
    for e, v in zip(edges, vertices[1:]):
        if v in out_v:
            cut = out_v.index(v)
            del out_v[cut + 1:]
            del out_e[cut:]
        else:
            out_v.append(v)
            out_e.append(e)
    return out_v, out_e


def _network(g: CallSchedule, source: int, target: int, p: int, sink_of) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_edge(_S, (source, 0), capacity=p, weight=0)
    arrive: dict[int, set[int]] = defaultdict(set)
    for c in g.calls:
        arrive[c.u].add(c.t)
        arrive[c.v].add(c.t)
    arrive[source].add(0)
    for idx, c in enumerate(g.calls):
        G.add_edge(("in", idx), ("out", idx), capacity=1, weight=0)
        for x in (c.u, c.v):
            if x == target:
                G.add_edge(("out", idx), ("end", idx), capacity=1, weight=0)
                G.add_edge(("end", idx), sink_of(idx), capacity=1, weight=0)
                continue
            for prev in sorted(arrive[x]):
                descent = int(prev > 0 and c.t <= prev)
                G.add_edge((x, prev), ("in", idx), capacity=1, weight=descent)
            G.add_edge(("out", idx), (x, c.t), capacity=1, weight=0)
    return G


def _decompose(g: CallSchedule, flow: dict, source: int, target: int) -> list[FoldedPath]:
    remaining = {a: {b: f for b, f in nbrs.items() if f > 0} for a, nbrs in flow.items()}
    paths = []
    for _ in range(sum(remaining.get(_S, {}).values())):
        node = _S
        trail = []
        while node != _T:
            nxt = min(remaining[node], key=repr)
            remaining[node][nxt] -= 1
            if not remaining[node][nxt]:
                del remaining[node][nxt]
            trail.append(nxt)
            node = nxt
        vertices, edges = [source], []
        pending = None
        for node in trail:
            tag = node[0]
            if tag == "out":
                pending = node[1]
            elif pending is not None and (isinstance(tag, int) or tag == "end"):
                dest = target if tag == "end" else tag
                # entering and leaving a call at the same endpoint is a no-op
                if dest != vertices[-1]:
                    edges.append(pending)
                    vertices.append(dest)
                pending = None
        vertices, edges = _loop_erase(vertices, edges)
        paths.append(folded_path(g, vertices, edges))
    return paths


def min_folded_family(
    g: CallSchedule,
    source: int,
    target: int,
    p: int,
    decomposition: Decomposition | None = None,
    r: Sequence[int] | None = None,
) -> list[FoldedPath]:
    """Up to ``p`` edge-disjoint simple folded paths with the least total folded number.

    With a decomposition and ``r``, at most ``r[i]`` paths may end with a
    call of block ``i``.  Returns fewer than ``p`` paths when no larger
    family exists.  The total folded number of the result is optimal.
    """
    if source == target:
        return []
    if decomposition is not None and r is not None:
        sink_of = lambda idx: ("blk", decomposition.block_of[idx])  # noqa: E731
    else:
        sink_of = lambda idx: _T  # noqa: E731
    G = _network(g, source, target, p, sink_of)
    if decomposition is not None and r is not None:
        for i, cap in enumerate(r):
            if G.has_node(("blk", i)):
                G.add_edge(("blk", i), _T, capacity=cap, weight=0)
    if _T not in G:
        return []
    flow = nx.max_flow_min_cost(G, _S, _T)
    return _decompose(g, flow, source, target)

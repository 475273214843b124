"""Labeled call multigraphs and the algebra used to compose gossip schemes.

A gossip scheme on ``n`` nodes is a multiset of calls ``(t, u, v)``: nodes
``u`` and ``v`` exchange everything they know at time ``t``.  Calls are kept
in a stable order (label, then endpoints, then insertion order), and the
position of a call in :attr:`CallSchedule.calls` is its identity.  Paths,
fault sets and decomposition blocks all refer to calls by that index, since
endpoint pairs are ambiguous once parallel calls exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class Call(NamedTuple):
    t: int
    u: int
    v: int

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"node {x} is not an endpoint of {self}")


def _normalize(call: Sequence[int]) -> Call:
    t, a, b = (int(x) for x in call)
    return Call(t, a, b) if a < b else Call(t, b, a)


@dataclass(frozen=True)
class CallSchedule:
    """Immutable labeled multigraph: ``n`` nodes and an ordered tuple of calls."""

    n: int
    calls: tuple[Call, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        calls = [_normalize(c) for c in self.calls]
        for c in calls:
            if c.t < 1:
                raise ValueError(f"call {c}: labels must be positive integers")
            if c.u == c.v:
                raise ValueError(f"call {c}: self loops are not allowed")
            if c.u < 0 or c.v >= self.n:
                raise ValueError(f"call {c}: endpoint outside 0..{self.n - 1}")
        # sorted() is stable, so identical calls keep their insertion order
        object.__setattr__(self, "calls", tuple(sorted(calls)))

    def __len__(self) -> int:
        return len(self.calls)

    @property
    def m(self) -> int:
        return len(self.calls)

    @property
    def max_label(self) -> int:
        return self.calls[-1].t if self.calls else 0

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({c.t for c in self.calls}))

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Call indices touching each node, in schedule order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, c in enumerate(self.calls):
            inc[c.u].append(idx)
            inc[c.v].append(idx)
        return tuple(tuple(x) for x in inc)

    def degree(self, x: int) -> int:
        return len(self.incident[x])

    def find(self, t: int, a: int, b: int) -> int:
        """Index of the first call with label ``t`` between ``a`` and ``b``."""
        want = _normalize((t, a, b))
        for idx in self.incident[a]:
            if self.calls[idx] == want:
                return idx
        raise KeyError(f"no call {want} in schedule")

    def subset(self, indices: Iterable[int]) -> "CallSchedule":
        """Schedule on the same nodes keeping only the given calls (labels unchanged)."""
        keep = sorted(set(indices))
        return CallSchedule(self.n, tuple(self.calls[i] for i in keep))

    def without(self, indices: Iterable[int]) -> "CallSchedule":
        drop = set(indices)
        return CallSchedule(self.n, tuple(c for i, c in enumerate(self.calls) if i not in drop))

    def shifted(self, offset: int) -> "CallSchedule":
        return CallSchedule(self.n, tuple(Call(c.t + offset, c.u, c.v) for c in self.calls))

    def with_nodes(self, n: int) -> "CallSchedule":
        """Same calls on a larger node set (extra nodes are isolated)."""
        if n < self.n:
            raise ValueError("cannot shrink the node set")
        return CallSchedule(n, self.calls)


def empty_schedule(n: int) -> CallSchedule:
    return CallSchedule(n, ())


def edge_sum(g1: CallSchedule, g2: CallSchedule) -> CallSchedule:
    """Run ``g2`` after ``g1``: every label of ``g2`` is shifted by ``g1.max_label``.

    The result lists the calls of ``g1`` first, then those of ``g2``, so the
    indices of ``g1`` are preserved and ``g2``'s call ``i`` lands at ``g1.m + i``.
    """
    if g1.n != g2.n:
        raise ValueError(f"node count mismatch: {g1.n} != {g2.n}")
    shift = g1.max_label
    return CallSchedule(g1.n, g1.calls + tuple(Call(c.t + shift, c.u, c.v) for c in g2.calls))


def replicate(g: CallSchedule, h: int) -> CallSchedule:
    """``hG``: ``h`` consecutive copies of ``g``; copy ``i`` occupies indices ``(i-1)*m ..``."""
    if h < 1:
        raise ValueError("h must be at least 1")
    step = g.max_label
    calls = tuple(Call(c.t + i * step, c.u, c.v) for i in range(h) for c in g.calls)
    return CallSchedule(g.n, calls)


def copy_of_subset(g: CallSchedule, subset: Iterable[int], h: int, i: int) -> frozenset[int]:
    """Indices in ``replicate(g, h)`` of the copy ``A_i`` of a call subset of ``g``."""
    if not 1 <= i <= h:
        raise ValueError(f"copy index {i} outside 1..{h}")
    out = []
    for e in subset:
        if not 0 <= e < g.m:
            raise ValueError(f"call index {e} not in schedule")
        out.append(e + (i - 1) * g.m)
    return frozenset(out)


def count_descents(labels: Sequence[int]) -> int:
    return sum(1 for a, b in zip(labels, labels[1:]) if b <= a)


@dataclass(frozen=True)
class FoldedPath:
    """A walk split into maximal strictly ascending segments.

    ``breaks`` holds the edge positions where a new segment starts; the
    folded number is the number of breaks.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    labels: tuple[int, ...]
    breaks: tuple[int, ...] = field(default=())

    @property
    def folded_number(self) -> int:
        return len(self.breaks)

    @property
    def source(self) -> int:
        return self.vertices[0]

    @property
    def target(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_ascending(self) -> bool:
        return not self.breaks

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def segments(self) -> list[tuple[int, ...]]:
        cuts = (0, *self.breaks, len(self.edges))
        return [self.edges[a:b] for a, b in zip(cuts, cuts[1:])]

    def segment_bounds(self) -> list[tuple[int, int]]:
        cuts = (0, *self.breaks, len(self.edges))
        return list(zip(cuts, cuts[1:]))


def folded_path(g: CallSchedule, vertices: Sequence[int], edges: Sequence[int]) -> FoldedPath:
    """Validate a walk in ``g`` and split it into maximal ascending segments."""
    vertices = tuple(int(x) for x in vertices)
    edges = tuple(int(e) for e in edges)
    if len(vertices) != len(edges) + 1:
        raise ValueError("a walk needs exactly one more vertex than edges")
    for pos, e in enumerate(edges):
        if not 0 <= e < g.m:
            raise ValueError(f"call index {e} not in schedule")
        c = g.calls[e]
        if {vertices[pos], vertices[pos + 1]} != {c.u, c.v}:
            raise ValueError(f"call {e} {c} does not join {vertices[pos]} and {vertices[pos + 1]}")
    labels = tuple(g.calls[e].t for e in edges)
    breaks = tuple(pos for pos in range(1, len(labels)) if labels[pos] <= labels[pos - 1])
    return FoldedPath(vertices, edges, labels, breaks)


def folded_number(g: CallSchedule, vertices: Sequence[int], edges: Sequence[int]) -> int:
    return folded_path(g, vertices, edges).folded_number


def path_from_calls(g: CallSchedule, source: int, edges: Sequence[int]) -> FoldedPath:
    """Build the walk starting at ``source`` that follows the given call indices."""
    vertices = [source]
    for e in edges:
        vertices.append(g.calls[e].other(vertices[-1]))
    return folded_path(g, vertices, edges)


def copy_of_path(g: CallSchedule, path: FoldedPath, h: int, i: int) -> FoldedPath:
    """``P_i``: the copy of ``path`` inside the ``i``-th block of ``replicate(g, h)``."""
    if not 1 <= i <= h:
        raise ValueError(f"copy index {i} outside 1..{h}")
    edges = tuple(e + (i - 1) * g.m for e in path.edges)
    labels = tuple(t + (i - 1) * g.max_label for t in path.labels)
    return FoldedPath(path.vertices, edges, labels, path.breaks)


def lift_folded_path(g: CallSchedule, path: FoldedPath, h: int, k: int) -> FoldedPath:
    """Ascending path ``P(k)`` in ``replicate(g, h)``: segment ``j`` taken from copy ``k + j``."""
    s = path.folded_number
    if k < 1 or k + s > h:
        raise ValueError(f"need 1 <= k <= h - s, got k={k}, h={h}, s={s}")
    edges: list[int] = []
    labels: list[int] = []
    for j, (a, b) in enumerate(path.segment_bounds()):
        shift = k + j - 1
        edges.extend(e + shift * g.m for e in path.edges[a:b])
        labels.extend(t + shift * g.max_label for t in path.labels[a:b])
    breaks = tuple(pos for pos in range(1, len(labels)) if labels[pos] <= labels[pos - 1])
    return FoldedPath(path.vertices, tuple(edges), tuple(labels), breaks)


@dataclass(frozen=True)
class Decomposition:
    """Label-ordered partition of a schedule's calls into blocks ``F(0) .. F(l-1)``.

    ``p``, ``q`` and ``r`` are the path-family parameters claimed for the
    base graph: ``p`` edge-disjoint folded paths per ordered pair with total
    folded number at most ``q``, of which ``r[i]`` end with a call in block ``i``.
    """

    blocks: tuple[frozenset[int], ...]
    p: int | None = None
    q: int | None = None
    r: tuple[int, ...] | None = None

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {e: i for i, b in enumerate(self.blocks) for e in b}

    def with_params(self, p: int, q: int, r: Sequence[int]) -> "Decomposition":
        if len(r) != self.l:
            raise ValueError(f"r has {len(r)} entries for {self.l} blocks")
        return Decomposition(self.blocks, p, q, tuple(r))

    def validate(self, g: CallSchedule) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(g.m)):
            raise ValueError("blocks do not cover every call")
        prev_max = 0
        for i, b in enumerate(self.blocks):
            if not b:
                raise ValueError(f"block {i} is empty")
            labels = [g.calls[e].t for e in b]
            if min(labels) <= prev_max:
                raise ValueError(f"block {i} is not label-ordered after block {i - 1}")
            prev_max = max(labels)


def decompose_by_label(
    g: CallSchedule,
    label_groups: Sequence[Iterable[int]] | None = None,
    *,
    p: int | None = None,
    q: int | None = None,
    r: Sequence[int] | None = None,
) -> Decomposition:
    """Partition ``g`` into blocks given by groups of labels (default: one block per label).

    Groups must be label-ordered (every label of group ``i`` below every label
    of group ``i+1``) and together cover all labels present in ``g``.
    """
    if label_groups is None:
        groups = [{t} for t in g.labels]
    else:
        groups = [set(x) for x in label_groups]
    if any(not grp for grp in groups):
        raise ValueError("empty label group")
    for a, b in zip(groups, groups[1:]):
        if max(a) >= min(b):
            raise ValueError("label groups must be strictly increasing")
    owner = {t: i for i, grp in enumerate(groups) for t in grp}
    missing = set(g.labels) - owner.keys()
    if missing:
        raise ValueError(f"labels {sorted(missing)} not covered by any group")
    blocks: list[set[int]] = [set() for _ in groups]
    for idx, c in enumerate(g.calls):
        blocks[owner[c.t]].add(idx)
    dec = Decomposition(tuple(frozenset(b) for b in blocks), p, q, tuple(r) if r is not None else None)
    dec.validate(g)
    return dec

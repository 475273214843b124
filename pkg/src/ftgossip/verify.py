"""Ground-truth checks for fault tolerance.

Two independent routes decide whether a schedule survives ``k`` failed calls:

* simulation: replay the calls label by label, optionally with a fault set
  removed, and brute-force every fault set of size ``k``;
* flow: count edge-disjoint strictly ascending paths per ordered pair as a
  max flow on a time-expanded DAG and apply Menger's criterion.

Calls sharing a label are evaluated against the knowledge held at the end of
the previous label (snapshot semantics), which is exactly reachability along
strictly ascending paths.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import maximum_flow

from .core import CallSchedule, Decomposition, FoldedPath

log = logging.getLogger(__name__)

DEFAULT_BRUTE_BUDGET = 10**7
BUDGET_ENV = "FTGOSSIP_BRUTE_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class KnowledgeState:
    """Bit ``j`` of ``known[i]`` is set when node ``i`` knows node ``j``'s piece."""

    n: int
    known: tuple[int, ...]

    def knows(self, node: int, piece: int) -> bool:
        return bool(self.known[node] >> piece & 1)

    @property
    def complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(k == full for k in self.known)

    def pieces(self, node: int) -> frozenset[int]:
        return frozenset(j for j in range(self.n) if self.known[node] >> j & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.knows(i, j) for j in range(self.n)] for i in range(self.n)]


def _check_faults(schedule: CallSchedule, faults: Iterable[int]) -> frozenset[int]:
    faults = frozenset(faults)
    bad = [f for f in faults if not 0 <= f < schedule.m]
    if bad:
        raise ValueError(f"fault call indices {sorted(bad)} not in schedule")
    return faults


def simulate_history(schedule: CallSchedule, faults: Iterable[int] = ()) -> list[tuple[int, KnowledgeState]]:
    """Knowledge after each distinct label, as ``(label, state)`` pairs."""
    faults = _check_faults(schedule, faults)
    known = [1 << i for i in range(schedule.n)]
    out = []
    calls = schedule.calls
    i = 0
    while i < len(calls):
        t = calls[i].t
        j = i
        while j < len(calls) and calls[j].t == t:
            j += 1
        before = list(known)
        for idx in range(i, j):
            if idx in faults:
                continue
            c = calls[idx]
            merged = before[c.u] | before[c.v]
            known[c.u] |= merged
            known[c.v] |= merged
        out.append((t, KnowledgeState(schedule.n, tuple(known))))
        i = j
    return out


def simulate(schedule: CallSchedule, faults: Iterable[int] = ()) -> KnowledgeState:
    history = simulate_history(schedule, faults)
    if history:
        return history[-1][1]
    _check_faults(schedule, faults)
    return KnowledgeState(schedule.n, tuple(1 << i for i in range(schedule.n)))


def _fast_complete(schedule: CallSchedule, alive: Sequence[bool], full: int) -> bool:
    known = [1 << i for i in range(schedule.n)]
    calls = schedule.calls
    i = 0
    m = len(calls)
    while i < m:
        t = calls[i].t
        j = i
        while j < m and calls[j].t == t:
            j += 1
        if j - i == 1:
            if alive[i]:
                c = calls[i]
                merged = known[c.u] | known[c.v]
                known[c.u] = known[c.v] = merged
        else:
            updates = []
            for idx in range(i, j):
                if alive[idx]:
                    c = calls[idx]
                    updates.append((c.u, c.v, known[c.u] | known[c.v]))
            for u, v, merged in updates:
                known[u] |= merged
                known[v] |= merged
        i = j
    return all(k == full for k in known)


def brute_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BRUTE_BUDGET


@dataclass(frozen=True)
class BruteForceResult:
    tolerant: bool
    k: int
    witness: tuple[int, ...] | None = None
    checked: int = 0


def is_k_fault_tolerant_bruteforce(schedule: CallSchedule, k: int, budget: int | None = None) -> BruteForceResult:
    """Try every fault set; on failure return a smallest fault set that breaks dissemination.

    Sizes are tried in increasing order up to ``k``.  Checking size exactly
    ``k`` would suffice for the verdict (removing calls never adds paths),
    but going up in size makes the witness minimal.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    budget = brute_budget() if budget is None else budget
    m = schedule.m
    total = sum(math.comb(m, i) for i in range(min(k, m) + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} fault sets exceed the budget of {budget}")
    full = (1 << schedule.n) - 1
    checked = 0
    for size in range(min(k, m) + 1):
        for faults in combinations(range(m), size):
            alive = [True] * m
            for f in faults:
                alive[f] = False
            checked += 1
            if not _fast_complete(schedule, alive, full):
                return BruteForceResult(False, k, tuple(faults), checked)
    return BruteForceResult(True, k, None, checked)


class FlowNetwork:
    """Time-expanded DAG of a schedule, built once and queried per ordered pair.

    Labels are compressed to levels ``1..L``.  Node ``(v, i)`` is ``v`` after
    level ``i``; hold arcs ``(v, i-1) -> (v, i)`` are uncapacitated.  A call
    at level ``i`` is a capacity-1 arc ``in -> out`` entered from both
    endpoints at level ``i-1`` and leaving to both endpoints at level ``i``,
    so each call carries at most one path whichever way it is traversed.
    """

    def __init__(self, schedule: CallSchedule):
        self.schedule = schedule
        n = schedule.n
        level = {t: i + 1 for i, t in enumerate(schedule.labels)}
        self.levels = len(level)
        L = self.levels
        big = max(schedule.m, 1) + 1
        node = lambda v, i: v * (L + 1) + i  # noqa: E731
        base = n * (L + 1)
        rows: list[int] = []
        cols: list[int] = []
        caps: list[int] = []
        owner: list[int] = []  # call index of each unit arc, -1 for hold arcs

        def arc(a: int, b: int, c: int, call: int = -1) -> None:
            rows.append(a)
            cols.append(b)
            caps.append(c)
            owner.append(call)

        for v in range(n):
            for i in range(1, L + 1):
                arc(node(v, i - 1), node(v, i), big)
        for idx, c in enumerate(schedule.calls):
            i = level[c.t]
            a_in, a_out = base + 2 * idx, base + 2 * idx + 1
            arc(node(c.u, i - 1), a_in, 1, idx)
            arc(node(c.v, i - 1), a_in, 1, idx)
            arc(a_in, a_out, 1, idx)
            arc(a_out, node(c.u, i), 1, idx)
            arc(a_out, node(c.v, i), 1, idx)
        size = base + 2 * schedule.m
        self._size = size
        self._node = node
        self._arcs = (rows, cols, caps, owner)
        if rows:
            self._graph = csr_array(
                (np.asarray(caps, dtype=np.int32), (np.asarray(rows), np.asarray(cols))), shape=(size, size)
            )
        else:
            self._graph = None

    def count(self, source: int, target: int) -> int:
        if source == target:
            raise ValueError("source and target must differ")
        if self._graph is None:
            return 0
        res = maximum_flow(self._graph, self._node(source, 0), self._node(target, self.levels))
        return int(res.flow_value)

    def cut(self, source: int, target: int) -> tuple[int, ...]:
        """Calls on a minimum cut: failing exactly these keeps ``source``'s piece from ``target``."""
        if source == target:
            raise ValueError("source and target must differ")
        if self._graph is None:
            return ()
        s = self._node(source, 0)
        res = maximum_flow(self._graph, s, self._node(target, self.levels))
        flow = res.flow.tocsr()
        rows, cols, caps, owner = self._arcs
        residual: dict[int, list[int]] = {}
        for a, b, c in zip(rows, cols, caps):
            f = int(flow[a, b])
            if f < c:
                residual.setdefault(a, []).append(b)
            if f > 0:
                residual.setdefault(b, []).append(a)
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in residual.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return tuple(sorted({o for a, b, o in zip(rows, cols, owner) if a in seen and b not in seen}))

    def all_pairs(self) -> dict[tuple[int, int], int]:
        n = self.schedule.n
        return {(s, t): self.count(s, t) for s in range(n) for t in range(n) if s != t}


def count_edge_disjoint_ascending_paths(schedule: CallSchedule, source: int, target: int) -> int:
    return FlowNetwork(schedule).count(source, target)


@dataclass(frozen=True)
class FlowResult:
    tolerant: bool
    k: int
    min_pair_flow: int | None
    deficient_pair: tuple[int, int] | None = None
    witness: tuple[int, ...] | None = None


def is_k_fault_tolerant_flow(schedule: CallSchedule, k: int) -> FlowResult:
    """Menger check: every ordered pair needs ``k + 1`` edge-disjoint ascending paths."""
    n = schedule.n
    if n < 2:
        return FlowResult(True, k, None)
    net = FlowNetwork(schedule)
    best = None
    worst_pair = None
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            f = net.count(s, t)
            if best is None or f < best:
                best, worst_pair = f, (s, t)
    if best >= k + 1:
        return FlowResult(True, k, best)
    return FlowResult(False, k, best, worst_pair, net.cut(*worst_pair))


def duration(schedule: CallSchedule) -> int:
    return schedule.max_label


def is_round_schedulable(schedule: CallSchedule) -> bool:
    """True when the calls of every label form a matching."""
    busy: dict[int, set[int]] = {}
    for c in schedule.calls:
        used = busy.setdefault(c.t, set())
        if c.u in used or c.v in used:
            return False
        used.add(c.u)
        used.add(c.v)
    return True


@dataclass
class FamilyReport:
    pairs_checked: int = 0
    max_folded_sum: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_kind(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.violations:
            for kind in v["problems"]:
                out[kind] = out.get(kind, 0) + 1
        return out


def check_folded_family(
    schedule: CallSchedule,
    families: Mapping[tuple[int, int], Sequence[FoldedPath]],
    p: int,
    q: int,
    decomposition: Decomposition | None = None,
    r: Sequence[int] | None = None,
) -> FamilyReport:
    """Check the path-family hypotheses of the composition rule pair by pair.

    Per ordered pair: exactly ``p`` paths, each a valid walk from source to
    target in ``schedule``, pairwise edge-disjoint, folded numbers summing to
    at most ``q``, and (when a decomposition is given) ``r[i]`` last calls in
    block ``i``.
    """
    if r is None and decomposition is not None:
        r = decomposition.r
    n = schedule.n
    expected = {(s, t) for s in range(n) for t in range(n) if s != t}
    if set(families) != expected:
        raise ValueError("families must cover exactly the ordered pairs of distinct nodes")
    report = FamilyReport()
    for (s, t) in sorted(families):
        fam = families[(s, t)]
        problems = []
        if len(fam) != p:
            problems.append("count")
        used: set[int] = set()
        shared = False
        for path in fam:
            if path.source != s or path.target != t:
                problems.append("endpoints")
            for pos, e in enumerate(path.edges):
                c = schedule.calls[e] if 0 <= e < schedule.m else None
                if c is None or {c.u, c.v} != {path.vertices[pos], path.vertices[pos + 1]} or c.t != path.labels[pos]:
                    problems.append("not_a_walk")
                    break
            if used & set(path.edges):
                shared = True
            used |= set(path.edges)
        if shared:
            problems.append("shared_call")
        total = sum(path.folded_number for path in fam)
        report.max_folded_sum = max(report.max_folded_sum, total)
        if total > q:
            problems.append("folded_sum")
        hist = None
        if decomposition is not None and r is not None:
            hist = [0] * decomposition.l
            for path in fam:
                if path.edges:
                    hist[decomposition.block_of[path.edges[-1]]] += 1
            if tuple(hist) != tuple(r):
                problems.append("last_edge_blocks")
        report.pairs_checked += 1
        if problems:
            report.violations.append(
                {"pair": (s, t), "problems": sorted(set(problems)), "folded_sum": total, "last_blocks": hist}
            )
    return report


def verification_report(schedule: CallSchedule, k: int, method: str = "flow", budget: int | None = None) -> dict:
    """Structured summary of a fault-tolerance check (``method`` is flow, brute or both)."""
    if method not in ("flow", "brute", "both"):
        raise ValueError(f"unknown method {method!r}")
    report: dict = {
        "n": schedule.n,
        "m": schedule.m,
        "k": k,
        "method": method,
        "duration": duration(schedule),
        "round_schedulable": is_round_schedulable(schedule),
        "min_pair_flow": None,
        "witness": None,
    }
    verdicts = []
    if method in ("flow", "both"):
        fr = is_k_fault_tolerant_flow(schedule, k)
        report["min_pair_flow"] = fr.min_pair_flow
        if fr.deficient_pair is not None:
            report["deficient_pair"] = list(fr.deficient_pair)
            report["witness"] = [list(schedule.calls[i]) for i in fr.witness]
        verdicts.append(fr.tolerant)
    if method in ("brute", "both"):
        br = is_k_fault_tolerant_bruteforce(schedule, k, budget)
        if br.witness is not None:
            report["witness"] = [list(schedule.calls[i]) for i in br.witness]
        verdicts.append(br.tolerant)
    if len(set(verdicts)) > 1:
        log.error("flow and brute-force verdicts disagree for n=%d m=%d k=%d", schedule.n, schedule.m, k)
        report["verdict"] = "disagreement"
    else:
        report["verdict"] = "tolerant" if verdicts[0] else "not_tolerant"
    return report

"""Validation suites shared by the ``selftest`` command and the test-suite."""

from __future__ import annotations

import random
import sys
from typing import TextIO

from . import knodel, wheel
from .core import CallSchedule
from .verify import check_folded_family, is_k_fault_tolerant_bruteforce, is_k_fault_tolerant_flow


def random_schedule(rng: random.Random, max_n: int = 8, max_m: int = 20, max_label: int = 8) -> CallSchedule:
    n = rng.randint(2, max_n)
    m = rng.randint(0, max_m)
    calls = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        calls.append((rng.randint(1, max_label), u, v))
    return CallSchedule(n, tuple(calls))


def oracle_disagreements(samples: int, seed: int = 0, ks=(0, 1, 2)) -> list[tuple[CallSchedule, int]]:
    """Random multigraphs on which the flow and brute-force verdicts differ."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        g = random_schedule(rng)
        for k in ks:
            if is_k_fault_tolerant_flow(g, k).tolerant != is_k_fault_tolerant_bruteforce(g, k).tolerant:
                bad.append((g, k))
    return bad


def knodel_family_violations(ns=range(6, 33, 2)) -> dict[int, int]:
    """Per even ``n``: ordered pairs whose family misses ``floor(log2 n)`` paths or exceeds ``q``."""
    out = {}
    for n in ns:
        D = knodel.floor_log2(n)
        rep = check_folded_family(knodel.knodel_base(n), knodel.all_families(n), p=D, q=D)
        out[n] = len(rep.violations)
    return out


def wheel_family_violations(ns=tuple(range(5, 16, 2)) + tuple(range(6, 17, 2)), q: int = 3) -> dict[int, dict[str, int]]:
    """Per ``n``: violation counts by kind against ``p = 3``, the given ``q`` and ``r = (1, 1, 1)``."""
    out = {}
    for n in ns:
        g, dec = wheel.generate_wheel(n)
        rep = check_folded_family(g, wheel.all_families(n), p=3, q=q, decomposition=dec, r=(1, 1, 1))
        out[n] = rep.by_kind()
    return out


def run_selftest(samples: int = 200, seed: int = 0, out: TextIO = sys.stdout) -> bool:
    ok = True

    bad = oracle_disagreements(samples, seed)
    ok &= not bad
    print(f"{'PASS' if not bad else 'FAIL'} oracle agreement: {len(bad)} disagreements in {samples} schedules x k=0..2",
          file=out)

    kv = knodel_family_violations()
    total = sum(kv.values())
    ok &= not total
    print(f"{'PASS' if not total else 'FAIL'} knodel families n=6..32: {total} violating pairs", file=out)

    wv = wheel_family_violations()
    for n, kinds in wv.items():
        if kinds:
            ok = False
            print(f"FAIL wheel families n={n}: {kinds}", file=out)
        else:
            print(f"PASS wheel families n={n}", file=out)
    return bool(ok)

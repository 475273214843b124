"""Reading and writing schemes.

Text format: optional ``#`` comment lines, a header ``n m``, then ``m`` lines
``t u v`` sorted by ``t``.  A JSON document ``{"n": .., "calls": [[t, u, v], ..]}``
is accepted as well.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Mapping

from .core import CallSchedule


class SchemeFormatError(ValueError):
    pass


def dumps(schedule: CallSchedule, manifest: Mapping[str, object] | None = None) -> str:
    lines = []
    if manifest:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in manifest.items()))
    lines.append(f"{schedule.n} {schedule.m}")
    lines.extend(f"{c.t} {c.u} {c.v}" for c in schedule.calls)
    return "\n".join(lines) + "\n"


def to_json(schedule: CallSchedule) -> dict:
    return {"n": schedule.n, "calls": [list(c) for c in schedule.calls]}


def from_json(doc: Mapping) -> CallSchedule:
    try:
        n = int(doc["n"])
        calls = [tuple(int(x) for x in c) for c in doc["calls"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemeFormatError(f"bad structured scheme: {exc}") from exc
    if any(len(c) != 3 for c in calls):
        raise SchemeFormatError("each call must be [t, u, v]")
    try:
        return CallSchedule(n, tuple(calls))
    except ValueError as exc:
        raise SchemeFormatError(str(exc)) from exc


def read_manifest(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("#"):
            continue
        for tok in line[1:].split():
            if "=" in tok:
                k, v = tok.split("=", 1)
                out[k] = v
    return out


def loads(text: str) -> CallSchedule:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SchemeFormatError(f"bad JSON: {exc}") from exc
        return from_json(doc)

    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(x) for x in line.split()]))
        except ValueError as exc:
            raise SchemeFormatError(f"line {lineno}: non-integer token") from exc
    if not rows:
        raise SchemeFormatError("missing header line 'n m'")
    lineno, header = rows[0]
    if len(header) != 2:
        raise SchemeFormatError(f"line {lineno}: header must be 'n m'")
    n, m = header
    body = rows[1:]
    if len(body) != m:
        raise SchemeFormatError(f"header announces {m} calls, found {len(body)}")
    calls = []
    last_t = 0
    for lineno, row in body:
        if len(row) != 3:
            raise SchemeFormatError(f"line {lineno}: expected 't u v'")
        t, u, v = row
        if t < 1:
            raise SchemeFormatError(f"line {lineno}: label must be >= 1")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise SchemeFormatError(f"line {lineno}: bad endpoints {u} {v} for n={n}")
        if t < last_t:
            raise SchemeFormatError(f"line {lineno}: calls must be sorted by label")
        last_t = t
        calls.append((t, u, v))
    return CallSchedule(n, tuple(calls))


def read_scheme(path: str | Path) -> CallSchedule:
    """Read a scheme from a file, or from standard input when ``path`` is ``-``."""
    if str(path) == "-":
        return loads(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemeFormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write_scheme(path: str | Path, schedule: CallSchedule, manifest: Mapping[str, object] | None = None) -> None:
    text = dumps(schedule, manifest)
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)

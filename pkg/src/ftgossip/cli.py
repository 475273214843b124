"""Command-line entry point: ``ftgossip <verb> [options]``.

Exit status is 0 when the requested property holds, 1 when it does not and 2
for usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import bounds, builder, schemeio, verify

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # let main() map it to exit code 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or an integer, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _parse_faults(schedule, text: str) -> list[int]:
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        try:
            t, u, v = (int(x) for x in chunk.split())
        except ValueError:
            raise UsageError(f"fault {chunk!r} is not 't u v'") from None
        try:
            idx = schedule.find(t, u, v)
        except (KeyError, ValueError):
            raise UsageError(f"no call {chunk!r} in the schedule") from None
        if idx in out:
            # parallel copies: take the next unused one
            same = [i for i, c in enumerate(schedule.calls) if c == schedule.calls[idx] and i not in out]
            if not same:
                raise UsageError(f"call {chunk!r} listed more often than it occurs")
            idx = same[0]
        out.append(idx)
    return out


def cmd_generate(args) -> int:
    if args.construction == "knodel" and args.n % 2:
        raise UsageError(f"knodel needs even n; use --construction knodel-odd for n={args.n}")
    try:
        scheme = builder.build(args.construction, args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    manifest = {"builder": args.construction, "n": args.n, "k": args.k, "xi": scheme.m}
    text = schemeio.dumps(scheme, manifest)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"calls={scheme.m} duration={verify.duration(scheme)} xi={scheme.m}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    scheme = schemeio.read_scheme(args.file)
    try:
        report = verify.verification_report(scheme, args.k, args.method)
    except verify.BudgetExceeded as exc:
        raise UsageError(f"{exc}; raise {verify.BUDGET_ENV} or use --method flow") from None
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if report["verdict"] == "tolerant" else EXIT_FAIL


def cmd_simulate(args) -> int:
    scheme = schemeio.read_scheme(args.file)
    faults = _parse_faults(scheme, args.fail or "")
    state = verify.simulate(scheme, faults)
    for row in state.matrix():
        print(" ".join("1" if x else "0" for x in row))
    print("complete" if state.complete else "incomplete")
    return EXIT_OK if state.complete else EXIT_FAIL


def cmd_bounds(args) -> int:
    rows = bounds.compare_table(args.n_range, args.k_range)
    sys.stdout.write(bounds.format_table(rows, args.format))
    return EXIT_OK


def cmd_time(args) -> int:
    tb = bounds.time_bounds(args.n, args.k)
    print(f"exact {tb.exact}" if tb.exact is not None else f"[{tb.lower}, {tb.upper}]")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    ok = run_selftest(samples=args.samples, seed=args.seed, out=sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ftgossip", description="Fault-tolerant gossip schemes: build, verify, bound.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build a scheme")
    g.add_argument("--construction", choices=sorted(builder.CONSTRUCTIONS), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check k-fault tolerance of a scheme file")
    v.add_argument("file", help="scheme file, or - for stdin")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--method", choices=("flow", "brute", "both"), default="flow")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="print the knowledge matrix after the calls")
    s.add_argument("file")
    s.add_argument("--fail", default="", help='failed calls, e.g. "1 0 5;3 2 7"')
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bounds", help="table of published bounds")
    b.add_argument("--n-range", type=_int_range, required=True)
    b.add_argument("--k-range", type=_int_range, required=True)
    b.add_argument("--format", choices=("csv", "text"), default="text")
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("time", help="gossip time bounds")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.set_defaults(func=cmd_time)

    st = sub.add_parser("selftest", help="oracle agreement and path-family checks")
    st.add_argument("--samples", type=int, default=200)
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"ftgossip: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (schemeio.SchemeFormatError, OSError, ValueError) as exc:
        print(f"ftgossip: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

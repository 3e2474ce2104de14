"""Command-line driver.

Subcommands:
  monitor SPEC [--events FILE|-] [--format lines|json] [--strict]
  traces  SPEC --depth K
  step    SPEC [--trace S] [--dot]
  check   SPEC --depth K [--seed N] [--count M]

Exit codes: 0 success (monitor: final verdict RUNNING), 1 failure
(monitor: FAILED, check: violations found), 2 usage or format errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conformance
from .dot import to_dot
from .errors import CspmonError, OutOfAlphabetError
from .monitor import Verdict, feed, init_monitor
from .sos import TAU, internal_successors, run
from .syntax import SpecFile, parse_spec, print_term
from .traces import canonical_traces, format_trace, parse_trace, semantics


def _load_spec(path: str) -> SpecFile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_spec(f.read())


def _iter_events(stream, fmt: str):
    for line in stream:
        line = line.strip()
        if not line:
            continue
        if fmt == "json":
            record = json.loads(line)
            yield record["event"]
        else:
            yield line


def cmd_monitor(args) -> int:
    spec = _load_spec(args.spec)
    state = init_monitor(spec.root, spec.alphabet, strict=args.strict)
    stream = sys.stdin if args.events == "-" else open(args.events, "r", encoding="utf-8")
    try:
        events = _iter_events(stream, args.format)
        for i, event in enumerate(events, start=1):
            state = feed(state, event)
            print(f"{i} {event} {state.verdict.value}")
    except (json.JSONDecodeError, KeyError) as exc:
        print(f"error: malformed event record: {exc}", file=sys.stderr)
        return 2
    except OutOfAlphabetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0 if state.verdict is Verdict.RUNNING else 1


def cmd_traces(args) -> int:
    spec = _load_spec(args.spec)
    ts = semantics(spec.root, args.depth, spec.alphabet)
    for trace in canonical_traces(ts):
        print(format_trace(trace))
    return 0


def cmd_step(args) -> int:
    spec = _load_spec(args.spec)
    if args.dot:
        print(to_dot(spec.root, spec.alphabet), end="")
        return 0
    trace = parse_trace(args.trace) if args.trace else ()
    states = run(spec.root, trace, spec.alphabet)
    for state in sorted(states, key=print_term):
        print(f"state: {print_term(state)}")
        for t in sorted(
            internal_successors(state, spec.alphabet),
            key=lambda t: (str(t.action), print_term(t.target)),
        ):
            label = "tau" if t.action is TAU else t.action
            print(f"  {print_term(t.source)} --{label}--> {print_term(t.target)}")
    return 0


def cmd_check(args) -> int:
    spec = _load_spec(args.spec)
    cfg = conformance.GenConfig(
        max_size=args.max_size, alphabet=spec.alphabet, seed=args.seed
    )
    terms = [spec.root] + list(conformance.gen_terms(cfg, args.count))
    reports = conformance.run_suite(terms, spec.alphabet, base_seed=args.seed)
    failures = 0
    for r in reports:
        print(r.line())
        if not r.passed:
            failures += 1
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cspmon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monitor", help="run the monitor over an event stream")
    p.add_argument("spec")
    p.add_argument("--events", default="-", help="event file, or - for stdin")
    p.add_argument("--format", choices=("lines", "json"), default="lines")
    p.add_argument("--strict", action="store_true",
                   help="treat out-of-alphabet events as failures")
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("traces", help="print the trace set at a depth bound")
    p.add_argument("spec")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("step", help="explore transitions for debugging")
    p.add_argument("spec")
    p.add_argument("--trace", default="", help="dot-separated events to run first")
    p.add_argument("--dot", action="store_true", help="emit the LTS as Graphviz")
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("check", help="run the conformance suite")
    p.add_argument("spec")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-size", type=int, default=8)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CspmonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Subcommands: gen (instance files), solve (one algorithm over instances),
reduce (graph / Ising export), validate (invariant battery), bench (the
benchmark harness).  Exit codes: 0 success, 1 validation or solve failure,
2 argument errors.
"""

from __future__ import annotations

import argparse
import sys

from ._rng import mix
from .bench import parse_config, records_to_csv, run_benchmark, summary_to_csv
from .checks import run_validation
from .encoding import swap_count
from .heuristics import greedy, recursive_greedy, recursive_star_greedy, red_first
from .instances import (
    InvalidInstanceError,
    format_instance,
    generate_instance,
    parse_instances,
)
from .oracles import bpsp_bruteforce
from .qaoa import qaoa1_solve, xqaoa_solve
from .reduction import build_graph, build_ising, format_graph, format_ising
from .rqaoa import rqaoa_solve


def _read_instances(path: str):
    if path == "-":
        return parse_instances(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instances(fh)


def _cmd_gen(args) -> int:
    lines = []
    for idx in range(args.count):
        x = generate_instance(args.n, mix(args.seed, args.n, idx))
        lines.append(format_instance(x))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_solve(args) -> int:
    instances = _read_instances(args.instances)
    for idx, x in enumerate(instances):
        if args.algorithm == "rf":
            f = red_first(x)
            cost = swap_count(f)
        elif args.algorithm == "greedy":
            f = greedy(x)
            cost = swap_count(f)
        elif args.algorithm == "rg":
            f = recursive_greedy(x)
            cost = swap_count(f)
        elif args.algorithm == "rsg":
            f = recursive_star_greedy(x)
            cost = swap_count(f)
        elif args.algorithm == "qaoa1":
            cost, f = qaoa1_solve(x, seed=mix(args.seed, idx, 2))
        elif args.algorithm == "xqaoa":
            cost, f = xqaoa_solve(x, restarts=args.restarts, seed=mix(args.seed, idx, 1))
        elif args.algorithm == "rqaoa":
            trace = [] if args.trace else None
            cost, f = rqaoa_solve(x, cutoff=args.cutoff, trace=trace)
            if trace is not None:
                for record in trace:
                    print(record.trace_line(), file=sys.stderr)
        else:  # brute; argparse restricts the choices
            cost, f = bpsp_bruteforce(x)
        print(f"{x.n} {cost} {cost / x.n:.17g} {f}")
    return 0


def _cmd_reduce(args) -> int:
    instances = _read_instances(args.instances)
    chunks = []
    for x in instances:
        if args.format == "graph":
            chunks.append(format_graph(build_graph(x)))
        else:
            chunks.append(format_ising(build_ising(x)))
    text = "".join(chunks)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args) -> int:
    report = run_validation(args.seed, args.trials)
    print(f"checks run: {report.checks}")
    for failure in report.failures:
        print(f"FAIL {failure}", file=sys.stderr)
    print("result: " + ("pass" if report.passed else "fail"))
    return 0 if report.passed else 1


def _cmd_bench(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = parse_config(fh.read())
    if args.threads is not None:
        from dataclasses import replace

        config = replace(config, workers=args.threads)
    records, summary = run_benchmark(config)
    with open(config.records_path, "w", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))
    with open(config.summary_path, "w", encoding="utf-8") as fh:
        fh.write(summary_to_csv(summary))
    for row in summary:
        print(
            f"{row.algorithm} n={row.n}: mean ratio {row.mean:.4f} "
            f"(std {row.std:.4f}, {row.count} instances)"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paintshop",
        description="Binary paint shop solver workbench and benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate random instances")
    gen.add_argument("-n", type=int, required=True, help="number of cars")
    gen.add_argument("-c", "--count", type=int, default=1, help="instances to generate")
    gen.add_argument("--seed", type=int, default=0, help="master seed")
    gen.add_argument("-o", "--out", help="output path (default: stdout)")

    solve = sub.add_parser("solve", help="solve instances with one algorithm")
    solve.add_argument("instances", help="instance file path, or - for stdin")
    solve.add_argument(
        "--algorithm",
        required=True,
        choices=["rf", "greedy", "rg", "rsg", "qaoa1", "xqaoa", "rqaoa", "brute"],
    )
    solve.add_argument("--restarts", type=int, default=25)
    solve.add_argument("--cutoff", type=int, default=8)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument(
        "--trace",
        action="store_true",
        help="print one contraction line per recursive-rounding step to stderr",
    )

    reduce_ = sub.add_parser("reduce", help="export the graph or Ising reduction")
    reduce_.add_argument("instances", help="instance file path, or - for stdin")
    reduce_.add_argument("--format", required=True, choices=["graph", "ising"])
    reduce_.add_argument("-o", "--out", help="output path (default: stdout)")

    validate = sub.add_parser("validate", help="run the invariant battery")
    validate.add_argument("--seed", type=int, default=0)
    validate.add_argument("--trials", type=int, default=50)

    bench = sub.add_parser("bench", help="run a benchmark config")
    bench.add_argument("config", help="config file (key = value lines)")
    bench.add_argument("--threads", type=int, default=None, help="worker cap")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": _cmd_gen,
        "solve": _cmd_solve,
        "reduce": _cmd_reduce,
        "validate": _cmd_validate,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except InvalidInstanceError as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

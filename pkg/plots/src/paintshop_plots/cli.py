"""Command-line figure generation from a benchmark records CSV."""

from __future__ import annotations

import argparse
import sys

from .figures import load_records, plot_box, plot_kde, plot_scatter


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paintshop-plots", description="figures from benchmark records CSVs"
    )
    sub = parser.add_subparsers(dest="kind", required=True)

    box = sub.add_parser("box", help="ratio boxplots per (algorithm, size)")
    box.add_argument("--records", required=True)
    box.add_argument("--algorithms", required=True, help="comma-separated names")
    box.add_argument("--out", required=True)

    kde = sub.add_parser("kde", help="per-size ratio density curves")
    kde.add_argument("--records", required=True)
    kde.add_argument("--algorithm", required=True)
    kde.add_argument("--out", required=True)

    scatter = sub.add_parser("scatter", help="pairwise per-instance scatter")
    scatter.add_argument("--records", required=True)
    scatter.add_argument("--x-algorithm", required=True)
    scatter.add_argument("--y-algorithm", required=True)
    scatter.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records = load_records(args.records)
        if args.kind == "box":
            plot_box(records, [a.strip() for a in args.algorithms.split(",") if a.strip()], args.out)
        elif args.kind == "kde":
            plot_kde(records, args.algorithm, args.out)
        else:
            plot_scatter(records, args.x_algorithm, args.y_algorithm, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

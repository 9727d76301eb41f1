#!/usr/bin/env python3
"""Run the desk-scale ratio benchmarks and render the standard figures.

Usage: python scripts/run_ratio_suite.py [--skip-quantum]

Writes CSVs under out/ and, when the figure package is installed, a boxplot,
a per-size density plot, and the pairwise scatter against the star-greedy
baseline.
"""

import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "scripts" / "configs"


def run(args):
    print("+", " ".join(str(a) for a in args), flush=True)
    subprocess.run([str(a) for a in args], check=True)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--skip-quantum", action="store_true")
    options = parser.parse_args()

    (ROOT / "out").mkdir(exist_ok=True)
    run([sys.executable, "-m", "paintshop.cli", "bench", CONFIGS / "classical_ratio.cfg"])
    if not options.skip_quantum:
        run([sys.executable, "-m", "paintshop.cli", "bench", CONFIGS / "quantum_ratio.cfg"])

    try:
        import paintshop_plots  # noqa: F401
    except ImportError:
        print("figure package not installed; skipping plots")
        return 0

    run(
        [
            sys.executable, "-m", "paintshop_plots.cli", "box",
            "--records", ROOT / "out" / "classical_records.csv",
            "--algorithms", "rf,greedy,rg,rsg",
            "--out", ROOT / "out" / "classical_box.png",
        ]
    )
    if not options.skip_quantum:
        run(
            [
                sys.executable, "-m", "paintshop_plots.cli", "kde",
                "--records", ROOT / "out" / "quantum_records.csv",
                "--algorithm", "xqaoa_restart",
                "--out", ROOT / "out" / "xqaoa_kde.png",
            ]
        )
        run(
            [
                sys.executable, "-m", "paintshop_plots.cli", "scatter",
                "--records", ROOT / "out" / "quantum_records.csv",
                "--x-algorithm", "xqaoa",
                "--y-algorithm", "rsg",
                "--out", ROOT / "out" / "xqaoa_vs_rsg.png",
            ]
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())

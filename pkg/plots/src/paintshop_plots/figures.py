"""Ratio figures from benchmark records.

Reads the harness's records CSV (header
``n,instance,seed,algorithm,swaps,ratio,time_ms,restarts``) and renders
three figure styles: per-(algorithm, size) boxplots, per-size Gaussian
density curves, and pairwise per-instance scatter plots with the identity
diagonal as reference.  Figures are pure functions of the CSV: fixed figure
geometry, no jitter, PNG at 200 dpi.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from scipy.stats import gaussian_kde

EXPECTED_HEADER = ["n", "instance", "seed", "algorithm", "swaps", "ratio", "time_ms", "restarts"]

_DPI = 200
_FIGSIZE = (7.0, 4.5)


@dataclass(frozen=True)
class PlotJob:
    records: str
    kind: str  # box | kde | scatter
    algorithms: tuple[str, ...]
    out: str


@dataclass(frozen=True)
class Record:
    n: int
    instance: int
    algorithm: str
    ratio: float


def load_records(path: str | Path) -> list[Record]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != EXPECTED_HEADER:
            raise ValueError(f"unexpected records header: {header}")
        rows = []
        for row in reader:
            rows.append(
                Record(
                    n=int(row[0]),
                    instance=int(row[1]),
                    algorithm=row[3],
                    ratio=float(row[5]),
                )
            )
    return rows


def _check_algorithms(records: list[Record], wanted) -> None:
    present = {r.algorithm for r in records}
    missing = [a for a in wanted if a not in present]
    if missing:
        raise ValueError(f"algorithms not present in the records: {missing}")


def plot_box(records: list[Record], algorithms, out: str | Path) -> Path:
    """One box per (algorithm, n), grouped by algorithm, sizes ascending."""
    algorithms = tuple(algorithms)
    if not algorithms:
        raise ValueError("no algorithms selected")
    _check_algorithms(records, algorithms)
    groups = []
    labels = []
    for algorithm in algorithms:
        sizes = sorted({r.n for r in records if r.algorithm == algorithm})
        for n in sizes:
            groups.append([r.ratio for r in records if r.algorithm == algorithm and r.n == n])
            labels.append(f"{algorithm}\nn={n}")
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.boxplot(groups, tick_labels=labels)
    ax.set_ylabel("paint swap ratio")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    out = Path(out)
    fig.savefig(out, dpi=_DPI)
    plt.close(fig)
    return out


def plot_kde(records: list[Record], algorithm: str, out: str | Path) -> Path:
    """One Gaussian density curve (Scott's-rule bandwidth) per instance size."""
    _check_algorithms(records, [algorithm])
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    plotted = 0
    for n in sorted({r.n for r in records if r.algorithm == algorithm}):
        values = np.array(
            [r.ratio for r in records if r.algorithm == algorithm and r.n == n]
        )
        if len(values) < 2 or np.allclose(values, values[0]):
            warnings.warn(f"skipping n={n}: needs at least two distinct ratios")
            continue
        density = gaussian_kde(values)  # Scott's rule by default
        grid = np.linspace(values.min() - 0.02, values.max() + 0.02, 400)
        ax.plot(grid, density(grid), label=f"n={n}")
        plotted += 1
    if plotted == 0:
        plt.close(fig)
        raise ValueError("no size had enough records for a density estimate")
    ax.set_xlabel("paint swap ratio")
    ax.set_ylabel("density")
    ax.legend(title="cars")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = Path(out)
    fig.savefig(out, dpi=_DPI)
    plt.close(fig)
    return out


def paired_ratios(records: list[Record], x_algorithm: str, y_algorithm: str):
    """Per-(n, instance) ratio pairs shared by both algorithms."""
    by_key: dict[tuple[int, int], dict[str, float]] = {}
    for r in records:
        if r.algorithm in (x_algorithm, y_algorithm):
            by_key.setdefault((r.n, r.instance), {})[r.algorithm] = r.ratio
    pairs = [
        (entry[x_algorithm], entry[y_algorithm])
        for _, entry in sorted(by_key.items())
        if x_algorithm in entry and y_algorithm in entry
    ]
    return pairs


def plot_scatter(records: list[Record], x_algorithm: str, y_algorithm: str, out: str | Path) -> Path:
    """One point per shared instance, with the y=x diagonal for reference."""
    _check_algorithms(records, [x_algorithm, y_algorithm])
    pairs = paired_ratios(records, x_algorithm, y_algorithm)
    if not pairs:
        raise ValueError("the two algorithms share no instances")
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    lo = min(xs.min(), ys.min()) - 0.01
    hi = max(xs.max(), ys.max()) + 0.01
    ax.plot([lo, hi], [lo, hi], color="grey", linewidth=1, label="y = x")
    ax.scatter(xs, ys, s=18, alpha=0.8)
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_xlabel(f"{x_algorithm} paint swap ratio")
    ax.set_ylabel(f"{y_algorithm} paint swap ratio")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = Path(out)
    fig.savefig(out, dpi=_DPI)
    plt.close(fig)
    return out

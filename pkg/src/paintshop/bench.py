"""Benchmark harness: seeded instance sets, solver runs, CSV persistence.

A run is fully determined by its config: instance seeds derive from the
master seed as mix(master, n, index) and restart streams from the instance
seed, so records are identical whatever the worker count, and reruns are
bitwise-identical except for the wall-time column.
"""

from __future__ import annotations

import concurrent.futures
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._rng import mix
from .encoding import (
    expand,
    icc_swap_count_spin,
    is_valid_coloring,
    spins_to_colors,
    swap_count,
)
from .heuristics import greedy, recursive_greedy, recursive_star_greedy, red_first
from .instances import BpspInstance, generate_instance
from .oracles import bpsp_bruteforce
from .qaoa import extract_cut, qaoa1_solve, xqaoa_optimize_all, xqaoa_solve
from .reduction import build_ising
from .rqaoa import rqaoa_solve

__all__ = [
    "ALGORITHMS",
    "BenchConfig",
    "BenchRecord",
    "SummaryRow",
    "run_benchmark",
    "summarize",
    "records_to_csv",
    "summary_to_csv",
    "parse_config",
]

ALGORITHMS = ("rf", "greedy", "rg", "rsg", "qaoa1", "xqaoa", "rqaoa", "brute")

RECORDS_HEADER = "n,instance,seed,algorithm,swaps,ratio,time_ms,restarts"
SUMMARY_HEADER = "algorithm,n,count,mean,std,min,max"


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    instances: int
    algorithms: tuple[str, ...]
    restarts: int = 25
    cutoff: int = 8
    seed: int = 0
    records_path: str = "records.csv"
    summary_path: str = "summary.csv"
    workers: int = field(default_factory=lambda: max(1, os.cpu_count() or 1))
    per_restart: bool = False
    instances_out: str | None = None

    def validate(self) -> None:
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise ValueError("sizes must be positive")
        if self.instances < 1:
            raise ValueError("need at least one instance per size")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")


@dataclass(frozen=True)
class BenchRecord:
    n: int
    instance: int
    seed: int
    algorithm: str
    swaps: int
    time_ms: float
    restarts: int

    @property
    def ratio(self) -> float:
        return self.swaps / self.n


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    n: int
    count: int
    mean: float
    std: float
    min: float
    max: float


def _run_algorithm(
    name: str, x: BpspInstance, instance_seed: int, restarts: int, cutoff: int
) -> tuple[int, str, int]:
    """Returns (swaps, colouring, restarts actually used)."""
    if name == "rf":
        f = red_first(x)
    elif name == "greedy":
        f = greedy(x)
    elif name == "rg":
        f = recursive_greedy(x)
    elif name == "rsg":
        f = recursive_star_greedy(x)
    elif name == "qaoa1":
        cost, f = qaoa1_solve(x, seed=mix(instance_seed, 2))
        return cost, f, 1
    elif name == "xqaoa":
        cost, f = xqaoa_solve(x, restarts=restarts, seed=mix(instance_seed, 1))
        return cost, f, restarts
    elif name == "rqaoa":
        cost, f = rqaoa_solve(x, cutoff=cutoff)
        return cost, f, 1
    elif name == "brute":
        cost, f = bpsp_bruteforce(x)
        return cost, f, 1
    else:
        raise ValueError(f"unknown algorithm {name!r}")
    return swap_count(f), f, 1


def _one_task(args):
    config, n, idx = args
    instance_seed = mix(config.seed, n, idx)
    x = generate_instance(n, instance_seed)
    records = []
    for name in config.algorithms:
        if name == "xqaoa" and config.per_restart:
            records.extend(_xqaoa_with_restart_records(config, x, instance_seed, idx))
            continue
        start = time.perf_counter()
        swaps, coloring, used = _run_algorithm(
            name, x, instance_seed, config.restarts, config.cutoff
        )
        elapsed_ms = (time.perf_counter() - start) * 1e3
        if not is_valid_coloring(x, coloring):
            raise AssertionError(f"{name} returned an invalid colouring on n={n} #{idx}")
        if swaps != swap_count(coloring):
            raise AssertionError(f"{name} misreported its swap count on n={n} #{idx}")
        records.append(
            BenchRecord(
                n=n,
                instance=idx,
                seed=instance_seed,
                algorithm=name,
                swaps=swaps,
                time_ms=elapsed_ms,
                restarts=used,
            )
        )
    return (n, idx), records


def _xqaoa_with_restart_records(config, x, instance_seed, idx):
    """Primary best-of record plus one record per individual restart.

    One optimisation pass serves both: the primary row rounds the
    lowest-energy restart (matching the plain solve path), the extra rows
    round each restart on its own.
    """

    start = time.perf_counter()
    h = build_ising(x)
    outcomes = xqaoa_optimize_all(h, config.restarts, mix(instance_seed, 1))
    best_spins = [extract_cut(h, p) for p, _ in outcomes]
    per_restart = [icc_swap_count_spin(x, spins) for spins in best_spins]
    best_index = min(range(len(outcomes)), key=lambda k: outcomes[k][1])
    elapsed_ms = (time.perf_counter() - start) * 1e3
    best_coloring = expand(x, spins_to_colors(best_spins[best_index]))
    if not is_valid_coloring(x, best_coloring):
        raise AssertionError(f"xqaoa returned an invalid colouring on n={x.n} #{idx}")
    rows = [
        BenchRecord(
            n=x.n,
            instance=idx,
            seed=instance_seed,
            algorithm="xqaoa",
            swaps=per_restart[best_index],
            time_ms=elapsed_ms,
            restarts=config.restarts,
        )
    ]
    for k, swaps in enumerate(per_restart):
        rows.append(
            BenchRecord(
                n=x.n,
                instance=idx,
                seed=instance_seed,
                algorithm="xqaoa_restart",
                swaps=swaps,
                time_ms=0.0,
                restarts=k + 1,
            )
        )
    return rows


def run_benchmark(config: BenchConfig) -> tuple[list[BenchRecord], list[SummaryRow]]:
    """Run every configured algorithm on every seeded instance.

    Records come back ordered by (n, instance, algorithm-list order)
    regardless of the worker count.
    """
    config.validate()
    tasks = [(config, n, idx) for n in config.sizes for idx in range(config.instances)]
    results: dict[tuple[int, int], list[BenchRecord]] = {}
    if config.workers > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.workers) as pool:
            for key, records in pool.map(_one_task, tasks, chunksize=1):
                results[key] = records
    else:
        for task in tasks:
            key, records = _one_task(task)
            results[key] = records
    ordered: list[BenchRecord] = []
    for n in config.sizes:
        for idx in range(config.instances):
            ordered.extend(results[(n, idx)])
    if config.instances_out:
        from .instances import format_instance

        with open(config.instances_out, "w", encoding="utf-8") as fh:
            for n in config.sizes:
                for idx in range(config.instances):
                    x = generate_instance(n, mix(config.seed, n, idx))
                    fh.write(format_instance(x) + "\n")
    return ordered, summarize(ordered)


def summarize(records: Iterable[BenchRecord]) -> list[SummaryRow]:
    """Aggregate ratios per (algorithm, n); std uses the n-1 denominator."""
    groups: dict[tuple[str, int], list[float]] = {}
    order: list[tuple[str, int]] = []
    for rec in records:
        key = (rec.algorithm, rec.n)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(rec.ratio)
    rows = []
    for algorithm, n in order:
        values = groups[(algorithm, n)]
        count = len(values)
        mean = sum(values) / count
        if count > 1:
            var = sum((v - mean) ** 2 for v in values) / (count - 1)
            std = var ** 0.5
        else:
            std = 0.0
        rows.append(
            SummaryRow(
                algorithm=algorithm,
                n=n,
                count=count,
                mean=mean,
                std=std,
                min=min(values),
                max=max(values),
            )
        )
    return rows


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    lines = [RECORDS_HEADER]
    for r in records:
        lines.append(
            f"{r.n},{r.instance},{r.seed},{r.algorithm},{r.swaps},"
            f"{r.ratio:.17g},{r.time_ms:.3f},{r.restarts}"
        )
    return "\n".join(lines) + "\n"


def summary_to_csv(rows: Sequence[SummaryRow]) -> str:
    lines = [SUMMARY_HEADER]
    for r in rows:
        lines.append(
            f"{r.algorithm},{r.n},{r.count},{r.mean:.17g},{r.std:.17g},"
            f"{r.min:.17g},{r.max:.17g}"
        )
    return "\n".join(lines) + "\n"


_LIST_KEYS = {"sizes", "algorithms"}
_INT_KEYS = {"instances", "restarts", "cutoff", "seed", "workers"}
_PATH_KEYS = {"records", "summary"}
_BOOL_KEYS = {"per_restart"}
_RAW_KEYS = {"instances_out"}


def parse_config(text: str) -> BenchConfig:
    """Parse the line-oriented `key = value` config format.

    Lists are comma-separated; blank lines and '#' comments are ignored;
    unknown keys are errors.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in _LIST_KEYS:
            parts = [p.strip() for p in value.split(",") if p.strip()]
            if key == "sizes":
                values["sizes"] = tuple(int(p) for p in parts)
            else:
                values["algorithms"] = tuple(parts)
        elif key in _INT_KEYS:
            values[key] = int(value)
        elif key in _PATH_KEYS:
            values[f"{key}_path"] = value
        elif key in _BOOL_KEYS:
            if value.lower() not in ("true", "false"):
                raise ValueError(f"line {lineno}: {key} must be true or false")
            values[key] = value.lower() == "true"
        elif key in _RAW_KEYS:
            values[key] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    try:
        config = BenchConfig(**values)  # type: ignore[arg-type]
    except TypeError as exc:
        raise ValueError(f"incomplete config: {exc}") from None
    config.validate()
    return config

"""Acceptance suite: one test per shipping criterion, at pinned tolerances.

The exactness block is quick; the ratio block reproduces the benchmark
protocol at desk scale (a few minutes of heuristics, tens of minutes for the
variational solvers on one workstation).  Every test prints a PASS/FAIL line
(run pytest with -s to watch them stream).
"""

import math
import os

import pytest

from paintshop._rng import Stream, mix
from paintshop.bench import BenchConfig, run_benchmark
from paintshop.encoding import (
    colors_to_spins,
    compress,
    expand,
    icc_swap_count,
    icc_swap_count_spin,
    swap_count,
)
from paintshop.heuristics import (
    greedy,
    recursive_greedy,
    recursive_star_greedy,
    red_first,
    red_first_cost_via_eta,
)
from paintshop.instances import (
    double_letter_count,
    eta_values,
    generate_instance,
    validate_instance,
)
from paintshop.oracles import CircuitSpec, bpsp_bruteforce, simulate_p1
from paintshop.qaoa import (
    Qaoa1Params,
    XqaoaParams,
    qaoa1_energy,
    qaoa1_pair_expectation,
    xqaoa_energy,
    xqaoa_gradient,
)
from paintshop.reduction import (
    bpsp_via_maxcut,
    build_graph,
    build_ising,
    cut_weight,
    maxcut_bruteforce,
    total_weight,
)

MASTER_SEED = 20250810
WORKERS = min(2, os.cpu_count() or 1)

pytestmark = pytest.mark.acceptance


def report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"


def ratios(records, algorithm):
    return [r.ratio for r in records if r.algorithm == algorithm]


def mean(values):
    return sum(values) / len(values)


# ---------------------------------------------------------------------------
# exactness block
# ---------------------------------------------------------------------------


def test_reduction_equivalence_200_instances():
    stream = Stream(mix(MASTER_SEED, 1))
    matches = 0
    for trial in range(200):
        n = 2 + stream.randbelow(9)  # n in [2, 10]
        x = generate_instance(n, mix(MASTER_SEED, 1, trial))
        if bpsp_via_maxcut(x, maxcut_bruteforce)[0] == bpsp_bruteforce(x)[0]:
            matches += 1
    report(
        "reduction equivalence",
        matches == 200,
        f"{matches}/200 exact matches via one cut-oracle call",
    )


def test_identity_suite_1000_instances():
    stream = Stream(mix(MASTER_SEED, 2))
    failures = []
    for trial in range(1000):
        n = 1 + stream.randbelow(64)
        x = generate_instance(n, mix(MASTER_SEED, 2, trial))
        etas = eta_values(x)
        g = build_graph(x)
        h = build_ising(x)
        z = "".join("r" if stream.randbelow(2) == 0 else "b" for _ in range(n))
        f = expand(x, z)
        cost = icc_swap_count(x, z)
        rf_cost = swap_count(red_first(x))
        checks = [
            compress(x, f) == z,
            cost == swap_count(f),
            cost == icc_swap_count_spin(x, colors_to_spins(z)),
            cost == h.energy(colors_to_spins(z)),
            cost == rf_cost - cut_weight(g, z),
            rf_cost == red_first_cost_via_eta(x),
            2 * rf_cost == 2 * n - 1 + double_letter_count(x) + total_weight(g),
            total_weight(g)
            == -double_letter_count(x) - sum((-1) ** e for e in etas),
            all(w in (1, -1, -2) for _, _, w in g.edges),
            h.couplings2 == {(u, v): w for u, v, w in g.edges},
            h.offset2 == 2 * n - 1 + double_letter_count(x),
        ]
        degrees: dict[int, int] = {}
        for u, v, _ in g.edges:
            degrees[u] = degrees.get(u, 0) + 1
            degrees[v] = degrees.get(v, 0) + 1
        checks.append(all(d <= 4 for d in degrees.values()))
        if not all(checks):
            failures.append(trial)
    report(
        "identity suite",
        not failures,
        f"structural identities exact on 1000 instances (n <= 64); failures: {failures[:5]}",
    )


def test_showcase_fixture():
    x = validate_instance((5, 1, 1, 3, 2, 2, 5, 4, 3, 6, 6, 4))
    got = (
        swap_count(red_first(x)),
        swap_count(greedy(x)),
        swap_count(recursive_greedy(x)),
        swap_count(recursive_star_greedy(x)),
        bpsp_bruteforce(x)[0],
    )
    report(
        "six-car fixture",
        got == (7, 6, 5, 4, 4),
        f"rf/greedy/rg/rsg/exhaustive swaps = {got} (want (7, 6, 5, 4, 4))",
    )


def test_oracle_agreement_expectations():
    stream = Stream(mix(MASTER_SEED, 3))
    worst = 0.0
    for trial in range(100):
        n = 4 + stream.randbelow(7)  # n in [4, 10]
        x = generate_instance(n, mix(MASTER_SEED, 3, trial))
        h = build_ising(x)
        m = len(h.couplings2)
        beta = stream.uniform() * math.pi
        gamma = (stream.uniform() * 2 - 1) * math.pi
        shared = Qaoa1Params(beta, gamma)
        pairs = tuple(
            (u, v, c2 / 2.0, gamma) for (u, v), c2 in sorted(h.couplings2.items())
        )
        spec = CircuitSpec(n, pairs, (beta,) * n, (0.0,) * n)
        oracle = simulate_p1(spec)
        worst = max(
            worst,
            abs(qaoa1_energy(h, shared) - (h.offset2 / 2.0 + oracle.energy)),
        )
        for pair in h.couplings2:
            worst = max(
                worst,
                abs(qaoa1_pair_expectation(h, shared, pair) - oracle.pair_zz[pair]),
            )
        gammas = tuple((stream.uniform() * 2 - 1) * math.pi for _ in range(m))
        shared_vertex = tuple(stream.uniform() * math.pi for _ in range(n))
        params = XqaoaParams(gammas, shared_vertex, shared_vertex, "x=y")
        x_pairs = tuple(
            (u, v, c2 / 2.0, g)
            for ((u, v), c2), g in zip(sorted(h.couplings2.items()), gammas)
        )
        x_spec = CircuitSpec(n, x_pairs, shared_vertex, shared_vertex)
        x_oracle = simulate_p1(x_spec)
        worst = max(
            worst,
            abs(xqaoa_energy(h, params) - (h.offset2 / 2.0 + x_oracle.energy)),
        )
    report(
        "closed form vs statevector",
        worst < 1e-9,
        f"max deviation {worst:.3e} over 100 random (instance, parameter) pairs",
    )


def test_oracle_agreement_gradient():
    stream = Stream(mix(MASTER_SEED, 4))
    eps = 1e-5
    worst = 0.0
    points = 0
    trial = 0
    while points < 50:
        n = 5 + stream.randbelow(4)
        x = generate_instance(n, mix(MASTER_SEED, 4, trial))
        h = build_ising(x)
        m = len(h.couplings2)
        gammas = tuple((stream.uniform() * 2 - 1) * math.pi for _ in range(m))
        vertex = tuple(stream.uniform() * math.pi for _ in range(n))
        params = XqaoaParams(gammas, vertex, vertex, "x=y")
        grad = xqaoa_gradient(h, params)
        for i in range(m):
            if points >= 50:
                break
            bumped = list(gammas)
            bumped[i] += eps
            hi = xqaoa_energy(h, XqaoaParams(tuple(bumped), vertex, vertex, "x=y"))
            bumped[i] -= 2 * eps
            lo = xqaoa_energy(h, XqaoaParams(tuple(bumped), vertex, vertex, "x=y"))
            numeric = (hi - lo) / (2 * eps)
            worst = max(
                worst, abs(grad["gammas"][i] - numeric) / max(1.0, abs(numeric))
            )
            points += 1
        for j in range(n):
            if points >= 50:
                break
            bumped = list(vertex)
            bumped[j] += eps
            hi = xqaoa_energy(h, XqaoaParams(gammas, tuple(bumped), tuple(bumped), "x=y"))
            bumped[j] -= 2 * eps
            lo = xqaoa_energy(h, XqaoaParams(gammas, tuple(bumped), tuple(bumped), "x=y"))
            numeric = (hi - lo) / (2 * eps)
            worst = max(
                worst, abs(grad["vertices"][j] - numeric) / max(1.0, abs(numeric))
            )
            points += 1
        trial += 1
    report(
        "gradient vs central differences",
        worst < 1e-5,
        f"max relative deviation {worst:.3e} over 50 points",
    )


# ---------------------------------------------------------------------------
# ratio block (desk-scale benchmark protocol)
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def classical_records():
    config = BenchConfig(
        sizes=(128,),
        instances=50,
        algorithms=("rf", "greedy", "rg", "rsg"),
        seed=MASTER_SEED,
        workers=WORKERS,
    )
    records, _ = run_benchmark(config)
    _persist(records, "classical_records.csv")
    return records


@pytest.fixture(scope="module")
def rqaoa_128_records():
    config = BenchConfig(
        sizes=(128,),
        instances=25,
        algorithms=("rqaoa",),
        cutoff=8,
        seed=MASTER_SEED,
        workers=WORKERS,
    )
    records, _ = run_benchmark(config)
    _persist(records, "rqaoa_128_records.csv")
    return records


@pytest.fixture(scope="module")
def rqaoa_512_records():
    config = BenchConfig(
        sizes=(512,),
        instances=10,
        algorithms=("rqaoa",),
        cutoff=8,
        seed=MASTER_SEED,
        workers=WORKERS,
    )
    records, _ = run_benchmark(config)
    _persist(records, "rqaoa_512_records.csv")
    return records


@pytest.fixture(scope="module")
def xqaoa_records():
    config = BenchConfig(
        sizes=(128,),
        instances=20,
        algorithms=("xqaoa", "rsg"),
        restarts=25,
        seed=MASTER_SEED,
        workers=WORKERS,
        per_restart=True,
    )
    records, _ = run_benchmark(config)
    _persist(records, "xqaoa_records.csv")
    return records


def _persist(records, filename):
    """Keep the ratio-suite CSVs around as artifacts for the figure tooling."""
    from paintshop.bench import records_to_csv

    out_dir = os.path.join(os.path.dirname(__file__), "..", "out", "acceptance")
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, filename), "w", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))


def test_red_first_ratio(classical_records):
    value = mean(ratios(classical_records, "rf"))
    report(
        "red-first ratio",
        abs(value - 0.666) <= 0.03,
        f"mean {value:.4f} (want 0.666 +/- 0.03, 50 instances at n=128)",
    )


def test_greedy_ratio(classical_records):
    value = mean(ratios(classical_records, "greedy"))
    report(
        "greedy ratio",
        abs(value - 0.50) <= 0.03,
        f"mean {value:.4f} (want 0.50 +/- 0.03)",
    )


def test_recursive_greedy_ratio(classical_records):
    value = mean(ratios(classical_records, "rg"))
    report(
        "recursive greedy ratio",
        abs(value - 0.40) <= 0.02,
        f"mean {value:.4f} (want 0.40 +/- 0.02)",
    )


def test_recursive_star_greedy_ratio(classical_records):
    value = mean(ratios(classical_records, "rsg"))
    report(
        "recursive star greedy ratio",
        abs(value - 0.37) <= 0.025,
        f"mean {value:.4f} (want 0.37 +/- 0.025)",
    )


def test_rqaoa_ratio_128(rqaoa_128_records):
    value = mean(ratios(rqaoa_128_records, "rqaoa"))
    report(
        "recursive rounding ratio at n=128",
        abs(value - 0.322) <= 0.02,
        f"mean {value:.4f} over 25 instances, cutoff 8 (want 0.322 +/- 0.02)",
    )


def test_rqaoa_degradation_trend(rqaoa_128_records, rqaoa_512_records):
    small = mean(ratios(rqaoa_128_records, "rqaoa"))
    large = mean(ratios(rqaoa_512_records, "rqaoa"))
    report(
        "recursive rounding degradation",
        large > small,
        f"n=512 mean {large:.4f} strictly above n=128 mean {small:.4f} "
        "(reference trend 0.346 vs 0.322)",
    )


def test_xqaoa_ratio(xqaoa_records):
    # The 0.357 +/- 0.012 band applies to the across-restart average (the
    # statistic behind the published number); the harness's primary
    # best-of-restarts rows must sit strictly below it and below the
    # same-instance star-greedy mean.  See the decisions ledger.
    restart_mean = mean(ratios(xqaoa_records, "xqaoa_restart"))
    best_mean = mean(ratios(xqaoa_records, "xqaoa"))
    rsg_mean = mean(ratios(xqaoa_records, "rsg"))
    in_band = abs(restart_mean - 0.357) <= 0.012
    below_rsg = restart_mean < rsg_mean and best_mean < rsg_mean
    best_below = best_mean < restart_mean
    report(
        "overparameterised ansatz ratio",
        in_band and below_rsg and best_below,
        f"across-restart mean {restart_mean:.4f} (want 0.357 +/- 0.012), "
        f"best-of-25 mean {best_mean:.4f}, star-greedy same-set mean {rsg_mean:.4f}",
    )


def test_edge_sign_distribution():
    total = {1: 0, -1: 0, -2: 0}
    for idx in range(100):
        x = generate_instance(1024, mix(MASTER_SEED, 5, idx))
        for _, _, w in build_graph(x).edges:
            total[w] += 1
    edges = sum(total.values())
    minus_frac = total[-1] / edges
    plus_frac = total[1] / edges
    ok = 0.60 <= minus_frac <= 0.73 and 0.27 <= plus_frac <= 0.40
    report(
        "edge sign distribution",
        ok,
        f"weight -1 fraction {minus_frac:.4f} (want [0.60, 0.73]), "
        f"weight +1 fraction {plus_frac:.4f} (want [0.27, 0.40]) over {edges} edges",
    )

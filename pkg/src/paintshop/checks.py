"""Cross-module invariant battery behind the `validate` CLI command.

Runs the structural identities that tie the modules together on freshly
generated random instances: encoding bijection, the three cost forms, graph
bounds, the red-first/total-weight/cut identities, reduction-vs-enumeration
equality, and closed-form-vs-simulator agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._rng import Stream, mix
from .encoding import (
    colors_to_spins,
    compress,
    expand,
    icc_swap_count,
    icc_swap_count_spin,
    is_valid_coloring,
    swap_count,
)
from .heuristics import (
    greedy,
    recursive_greedy,
    recursive_star_greedy,
    red_first,
    red_first_cost_via_eta,
)
from .instances import double_letter_count, eta_values, generate_instance
from .oracles import CircuitSpec, bpsp_bruteforce, simulate_p1
from .qaoa import Qaoa1Params, qaoa1_energy
from .reduction import (
    build_graph,
    build_ising,
    bpsp_via_maxcut,
    cut_weight,
    maxcut_bruteforce,
    total_weight,
)

__all__ = ["ValidationReport", "run_validation"]


@dataclass
class ValidationReport:
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)

    @property
    def passed(self) -> bool:
        return not self.failures


def run_validation(seed: int, trials: int, inject_fault: bool = False) -> ValidationReport:
    """Exercise the invariant suite on `trials` random instances.

    `inject_fault` deliberately corrupts one comparison so the harness's
    failure path can itself be tested.
    """
    report = ValidationReport()
    stream = Stream(mix(seed, 0xC0FFEE))
    for trial in range(trials):
        n = 2 + stream.randbelow(9)
        x = generate_instance(n, mix(seed, trial))
        etas = eta_values(x)
        g = build_graph(x)
        h = build_ising(x)
        tag = f"trial {trial} (n={n}, word={' '.join(map(str, x.word))})"

        z = "".join("r" if stream.randbelow(2) == 0 else "b" for _ in range(n))
        f = expand(x, z)
        report.record(is_valid_coloring(x, f), f"{tag}: expansion validity")
        report.record(compress(x, f) == z, f"{tag}: bijection roundtrip")
        cost = icc_swap_count(x, z)
        report.record(cost == swap_count(f), f"{tag}: succinct cost")
        report.record(
            cost == icc_swap_count_spin(x, colors_to_spins(z)), f"{tag}: spin cost"
        )
        report.record(cost == h.energy(colors_to_spins(z)), f"{tag}: Ising energy")
        report.record(
            cost == swap_count(red_first(x)) - cut_weight(g, z),
            f"{tag}: cut difference identity",
        )

        degrees: dict[int, int] = {}
        for u, v, w in g.edges:
            degrees[u] = degrees.get(u, 0) + 1
            degrees[v] = degrees.get(v, 0) + 1
            report.record(w in (1, -1, -2), f"{tag}: weight alphabet")
        report.record(
            all(d <= 4 for d in degrees.values()), f"{tag}: degree bound"
        )
        report.record(
            total_weight(g) == -double_letter_count(x) - sum((-1) ** e for e in etas),
            f"{tag}: total weight identity",
        )
        rf_cost = swap_count(red_first(x))
        report.record(rf_cost == red_first_cost_via_eta(x), f"{tag}: red-first parity sum")
        report.record(
            2 * rf_cost == 2 * n - 1 + double_letter_count(x) + total_weight(g),
            f"{tag}: red-first total-weight identity",
        )

        for name, heuristic in (
            ("red-first", red_first),
            ("greedy", greedy),
            ("recursive greedy", recursive_greedy),
            ("recursive star greedy", recursive_star_greedy),
        ):
            report.record(
                is_valid_coloring(x, heuristic(x)), f"{tag}: {name} validity"
            )

        exact, _ = bpsp_bruteforce(x)
        via_cut, f_cut = bpsp_via_maxcut(x, maxcut_bruteforce)
        wanted = exact + (1 if inject_fault else 0)
        report.record(via_cut == wanted, f"{tag}: reduction equals enumeration")
        report.record(is_valid_coloring(x, f_cut), f"{tag}: reduction colouring validity")

        params = Qaoa1Params(
            beta=stream.uniform() * math.pi, gamma=(stream.uniform() * 2 - 1) * math.pi
        )
        pairs = tuple(
            (u, v, c2 / 2.0, params.gamma) for (u, v), c2 in sorted(h.couplings2.items())
        )
        spec = CircuitSpec(n, pairs, (params.beta,) * n, (0.0,) * n)
        oracle = h.offset2 / 2.0 + simulate_p1(spec).energy
        report.record(
            abs(qaoa1_energy(h, params) - oracle) < 1e-9,
            f"{tag}: closed form vs simulator",
        )
    return report

"""Recursive correlation rounding.

Each round optimises the shared-angle depth-1 ansatz on the current
Hamiltonian, reads the pair correlations of all coupled pairs, and locks the
most correlated pair into a sign relation, eliminating one variable.  The
Hamiltonian contraction is exact in integers scaled by 2, so no precision is
lost however many rounds run.  Once few enough variables remain the residual
is solved exactly and the sign relations are replayed backwards into a full
spin assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import expand, icc_swap_count_spin, spins_to_colors
from .instances import BpspInstance
from .qaoa import _qaoa1_correlations_on, _qaoa1_optimize_on, _Structure
from .reduction import IsingHamiltonian, build_ising

__all__ = [
    "ContractedIsing",
    "StepRecord",
    "rqaoa_step",
    "rqaoa_solve",
    "rqaoa_maxcut_backend",
]

_DEGENERATE_EPS = 1e-12


@dataclass(frozen=True)
class StepRecord:
    """One elimination: variable v expressed as sign * variable u."""

    u: int
    v: int
    sign: int
    correlation: float
    degenerate: bool = False

    def trace_line(self) -> str:
        return f"step {self.u} {self.v} {self.sign:+d} {abs(self.correlation):.6f}"


@dataclass
class ContractedIsing:
    """Working Hamiltonian over the still-active variables.

    Couplings and the offset are stored doubled so contraction arithmetic is
    exact; the constraint stack maps any assignment of the active variables
    back to all original variables.
    """

    n: int
    active: set[int]
    couplings2: dict[tuple[int, int], int]
    offset2: int
    constraints: list[StepRecord] = field(default_factory=list)

    @classmethod
    def from_hamiltonian(cls, h: IsingHamiltonian) -> "ContractedIsing":
        return cls(
            n=h.n,
            active=set(range(1, h.n + 1)),
            couplings2=dict(h.couplings2),
            offset2=h.offset2,
        )

    def hamiltonian(self) -> IsingHamiltonian:
        return IsingHamiltonian(self.n, self.offset2, dict(self.couplings2))

    def energy(self, assignment: dict[int, int]) -> int:
        doubled = self.offset2
        for (u, v), c2 in self.couplings2.items():
            doubled += c2 * assignment[u] * assignment[v]
        if doubled % 2 != 0:
            raise ArithmeticError("contracted energy is not an integer")
        return doubled // 2

    def replay(self, assignment: dict[int, int]) -> tuple[int, ...]:
        """Extend an active-variable assignment to all n original variables."""
        full = dict(assignment)
        for record in reversed(self.constraints):
            full[record.v] = record.sign * full[record.u]
        return tuple(full[v] for v in range(1, self.n + 1))


def _contract(c: ContractedIsing, u: int, v: int, sign: int) -> None:
    """Substitute Z_v <- sign * Z_u, merging parallel couplings."""
    pair_uv = (u, v) if u < v else (v, u)
    c.offset2 += sign * c.couplings2.pop(pair_uv)
    for pair in [p for p in c.couplings2 if v in p]:
        other = pair[0] if pair[1] == v else pair[1]
        c2 = c.couplings2.pop(pair)
        merged = (other, u) if other < u else (u, other)
        c.couplings2[merged] = c.couplings2.get(merged, 0) + sign * c2
        if c.couplings2[merged] == 0:
            del c.couplings2[merged]
    c.active.discard(v)


def rqaoa_step(c: ContractedIsing) -> StepRecord:
    """Optimise, pick the strongest pair correlation, eliminate one variable.

    Ties on |correlation| go to the lexicographically smallest pair.  When
    every correlation is numerically zero the step still makes progress by
    positively correlating the smallest coupled pair, flagged as degenerate.
    """
    if len(c.active) < 2:
        raise ValueError("need at least two active variables to contract")
    if not c.couplings2:
        raise ValueError("no couplings left to contract")
    structure = _Structure(c.hamiltonian())
    params = _qaoa1_optimize_on(structure)
    correlations = _qaoa1_correlations_on(structure, params)

    best_pair = None
    best_abs = -1.0
    for pair in sorted(correlations):
        value = abs(correlations[pair])
        if value > best_abs:
            best_abs = value
            best_pair = pair
    degenerate = best_abs < _DEGENERATE_EPS
    if degenerate:
        best_pair = min(correlations)
    m_value = correlations[best_pair]
    sign = 1 if (degenerate or m_value >= 0.0) else -1
    u, v = best_pair
    record = StepRecord(u=u, v=v, sign=sign, correlation=m_value, degenerate=degenerate)
    _contract(c, u, v, sign)
    c.constraints.append(record)
    return record


def _bruteforce_tail(c: ContractedIsing) -> dict[int, int]:
    """Exact minimum over the active variables (first one pinned to +1)."""
    order = sorted(c.active)
    if not order:
        return {}
    k = len(order)
    index = {var: i for i, var in enumerate(order)}
    adj: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for (u, v), c2 in c.couplings2.items():
        adj[index[u]].append((index[v], c2))
        adj[index[v]].append((index[u], c2))

    spins = [1] * k
    doubled = c.offset2 + sum(c2 for c2 in c.couplings2.values())
    best = doubled
    best_spins = spins.copy()
    for step in range(1, 1 << (k - 1)):
        i = 1 + (step & -step).bit_length() - 1
        spins[i] = -spins[i]
        for j, c2 in adj[i]:
            doubled += 2 * c2 * spins[i] * spins[j]
        if doubled < best:
            best = doubled
            best_spins = spins.copy()
    return {var: best_spins[i] for i, var in enumerate(order)}


def rqaoa_solve(
    x: BpspInstance, cutoff: int = 8, trace: list[StepRecord] | None = None
) -> tuple[int, str]:
    """Full recursion: contract to at most `cutoff` variables, solve, replay."""
    if not 1 <= cutoff <= 24:
        raise ValueError("cutoff must be between 1 and 24")
    c = ContractedIsing.from_hamiltonian(build_ising(x))
    while len(c.active) > cutoff and c.couplings2:
        record = rqaoa_step(c)
        if trace is not None:
            trace.append(record)
    assignment = _bruteforce_tail(c)
    for var in c.active:
        assignment.setdefault(var, 1)
    spins = c.replay(assignment)
    cost = icc_swap_count_spin(x, spins)
    return cost, expand(x, spins_to_colors(spins))


def rqaoa_maxcut_backend(cutoff: int = 8):
    """Adapter: solve weighted MaxCut on a graph by recursive rounding."""

    def backend(graph):
        from .reduction import cut_weight

        c = ContractedIsing(
            n=graph.n,
            active=set(range(1, graph.n + 1)),
            couplings2={(u, v): w for u, v, w in graph.edges},
            offset2=0,
        )
        while len(c.active) > cutoff and c.couplings2:
            rqaoa_step(c)
        assignment = _bruteforce_tail(c)
        for var in c.active:
            assignment.setdefault(var, 1)
        z = spins_to_colors(c.replay(assignment))
        return cut_weight(graph, z), z

    return backend

"""Graph and Ising reductions of the paint shop objective.

Every instance maps to a small weighted graph on the car ids: boundaries of
the word contribute signed weights, cars adjacent somewhere in the word get
an edge when the signed contributions do not cancel.  The swap count of any
initial-colour string equals the red-first swap count minus the weight this
string cuts, so minimising swaps is exactly weighted MaxCut on this graph.
The same objective, written over spins, is an Ising energy with couplings of
half the edge weights; all coefficients are stored as integers scaled by 2
so energies stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .encoding import BLUE, RED, colors_to_spins, expand, swap_count
from .heuristics import red_first
from .instances import BpspInstance, double_letter_count, eta_values

__all__ = [
    "BpspGraph",
    "IsingHamiltonian",
    "theta",
    "build_graph",
    "total_weight",
    "cut_weight",
    "maxcut_bruteforce",
    "bpsp_via_maxcut",
    "build_ising",
    "format_graph",
    "format_ising",
    "MaxCutBackend",
]


@dataclass(frozen=True)
class BpspGraph:
    """Weighted graph on vertices 1..n with integer edge weights."""

    n: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, weight) with u < v

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, self.n + 1)}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def weight_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): w for u, v, w in self.edges}


def _boundary_weights(x: BpspInstance) -> dict[tuple[int, int], int]:
    """Signed boundary contributions per unordered non-equal adjacent pair."""
    weights: dict[tuple[int, int], int] = {}
    etas = eta_values(x)
    w = x.word
    for i, e in enumerate(etas):
        a, b = w[i], w[i + 1]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        weights[key] = weights.get(key, 0) + (1 if e else -1)
    return weights


def theta(x: BpspInstance, pair: Iterable[int]) -> int:
    """Aggregated signed weight of a vertex pair over all word boundaries."""
    u, v = sorted(pair)
    if not (1 <= u <= x.n and 1 <= v <= x.n):
        raise ValueError(f"pair ({u}, {v}) outside 1..{x.n}")
    etas = eta_values(x)
    w = x.word
    total = 0
    for i, e in enumerate(etas):
        if {w[i], w[i + 1]} == {u, v}:
            total += 1 if e else -1
    return total


def build_graph(x: BpspInstance) -> BpspGraph:
    """Graph on the car ids with an edge per non-cancelling adjacent pair."""
    weights = _boundary_weights(x)
    edges = tuple(
        (u, v, w) for (u, v), w in sorted(weights.items()) if w != 0
    )
    return BpspGraph(x.n, edges)


def total_weight(g: BpspGraph) -> int:
    return sum(w for _, _, w in g.edges)


def cut_weight(g: BpspGraph, z) -> int:
    """Total weight of edges whose endpoints get different sides.

    Accepts an initial-colour string or a spin sequence of length n.
    """
    if isinstance(z, str):
        sides: Sequence = z
    else:
        sides = tuple(z)
    if len(sides) != g.n:
        raise ValueError(f"cut has length {len(sides)}, expected {g.n}")
    return sum(w for u, v, w in g.edges if sides[u - 1] != sides[v - 1])


MaxCutBackend = Callable[[BpspGraph], tuple[int, str]]


def maxcut_bruteforce(g: BpspGraph, max_vertices: int = 24) -> tuple[int, str]:
    """Exact MaxCut by Gray-code enumeration with vertex 1 pinned red.

    Each Gray step flips one vertex and updates the cut value from that
    vertex's incident edges only.
    """
    if g.n > max_vertices:
        raise ValueError(f"refusing exhaustive cut search on {g.n} > {max_vertices} vertices")
    adj = g.adjacency()
    side = [0] * (g.n + 1)  # 0 = red side, vertex 1 stays 0
    value = 0
    best_value = 0
    best = side.copy()
    free = g.n - 1
    for step in range(1, 1 << free):
        v = 2 + (step & -step).bit_length() - 1  # vertex whose Gray bit flips
        side[v] ^= 1
        for u, w in adj[v]:
            value += w if side[u] != side[v] else -w
        if value > best_value:
            best_value = value
            best = side.copy()
    cut = "".join(RED if best[v] == 0 else BLUE for v in range(1, g.n + 1))
    return best_value, cut


def bpsp_via_maxcut(x: BpspInstance, backend: MaxCutBackend) -> tuple[int, str]:
    """Solve the paint shop objective through one MaxCut call.

    Returns the swap count (exact if the backend is exact) and the expanded
    full colouring of the returned cut.
    """
    g = build_graph(x)
    value, cut = backend(g)
    cost = swap_count(red_first(x)) - value
    return cost, expand(x, cut)


@dataclass(frozen=True)
class IsingHamiltonian:
    """offset + sum of pair couplings; coefficients stored as 2x integers."""

    n: int
    offset2: int
    couplings2: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def offset(self) -> float:
        return self.offset2 / 2.0

    def coupling_items(self) -> list[tuple[tuple[int, int], float]]:
        return [(pair, c2 / 2.0) for pair, c2 in sorted(self.couplings2.items())]

    def energy(self, spins: Sequence[int]) -> int:
        """Exact integer energy of a +/-1 assignment."""
        spins = tuple(spins)
        if len(spins) != self.n:
            raise ValueError(f"assignment has length {len(spins)}, expected {self.n}")
        doubled = self.offset2
        for (u, v), c2 in self.couplings2.items():
            doubled += c2 * spins[u - 1] * spins[v - 1]
        if doubled % 2 != 0:
            raise ArithmeticError("Ising energy is not an integer")
        return doubled // 2

    def energy_of_colors(self, z: str) -> int:
        return self.energy(colors_to_spins(z))


def build_ising(x: BpspInstance) -> IsingHamiltonian:
    """Hamiltonian whose energy at any spin assignment is the swap count.

    Equal-symbol boundaries contribute constants and fold into the offset;
    each remaining coupling is half the corresponding graph edge weight.
    """
    weights = _boundary_weights(x)
    couplings2 = {pair: w for pair, w in sorted(weights.items()) if w != 0}
    offset2 = 2 * x.n - 1 + double_letter_count(x)
    return IsingHamiltonian(x.n, offset2, couplings2)


def format_graph(g: BpspGraph) -> str:
    """Export format: header "n m", then one "u v w" line per edge."""
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def format_ising(h: IsingHamiltonian) -> str:
    """Export format: "n offset_num offset_den", then "u v j_num j_den" lines."""
    offset = Fraction(h.offset2, 2)
    lines = [f"{h.n} {offset.numerator} {offset.denominator}"]
    for (u, v), c2 in sorted(h.couplings2.items()):
        j = Fraction(c2, 2)
        lines.append(f"{u} {v} {j.numerator} {j.denominator}")
    return "\n".join(lines) + "\n"


def verify_graph_invariants(x: BpspInstance, g: BpspGraph) -> None:
    """Raise AssertionError when a structural bound fails."""
    degree = {v: 0 for v in range(1, g.n + 1)}
    seen: set[tuple[int, int]] = set()
    word_pairs = set()
    w = x.word
    for i in range(len(w) - 1):
        if w[i] != w[i + 1]:
            word_pairs.add((min(w[i], w[i + 1]), max(w[i], w[i + 1])))
    for u, v, weight in g.edges:
        assert u < v, "edge endpoints must be ordered"
        assert (u, v) not in seen, "duplicate edge"
        seen.add((u, v))
        assert weight in (1, -1, -2), f"edge weight {weight} outside the weight alphabet"
        assert (u, v) in word_pairs, "edge endpoints never adjacent in the word"
        degree[u] += 1
        degree[v] += 1
    assert all(d <= 4 for d in degree.values()), "vertex degree exceeds 4"

"""Ground-truth engines: exact enumeration and dense statevector simulation.

The simulator prepares the uniform superposition, applies one layer of pair
phase factors, then per-qubit X rotations, then per-qubit Y rotations, and
reads out exact expectations.  Rotation convention is exp(-i * angle * P)
for P in {X, Y, Z(x)Z}; spin +1 corresponds to basis state |0> and colour
red.  Everything here is deliberately independent of the closed-form
expectation paths so it can arbitrate their signs and scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import Stream, mix
from .encoding import RED, BLUE, expand
from .instances import BpspInstance, eta_values

__all__ = [
    "CircuitSpec",
    "QuantumStateReport",
    "simulate_p1",
    "sample_bitstrings",
    "bpsp_bruteforce",
]

_MAX_QUBITS = 20


@dataclass(frozen=True)
class CircuitSpec:
    """Depth-1 circuit: per-pair phase angles and per-qubit mixer angles.

    pairs holds (u, v, coupling, gamma) with 1-based qubits u < v; betas are
    the X-rotation angles and alphas the Y-rotation angles, one per qubit.
    """

    n: int
    pairs: tuple[tuple[int, int, float, float], ...]
    betas: tuple[float, ...]
    alphas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) != self.n or len(self.alphas) != self.n:
            raise ValueError("one mixer angle of each kind per qubit required")
        for u, v, coupling, gamma in self.pairs:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"pair ({u}, {v}) outside 1..{self.n}")
            if not (math.isfinite(coupling) and math.isfinite(gamma)):
                raise ValueError("non-finite pair parameters")
        for angle in (*self.betas, *self.alphas):
            if not math.isfinite(angle):
                raise ValueError("non-finite mixer angle")


@dataclass(frozen=True)
class QuantumStateReport:
    pair_zz: dict[tuple[int, int], float]
    single_z: tuple[float, ...]
    energy: float  # sum of coupling * <ZuZv> over the circuit's pairs
    samples: tuple[tuple[int, ...], ...] = field(default_factory=tuple)


def _statevector(spec: CircuitSpec) -> np.ndarray:
    if spec.n > _MAX_QUBITS:
        raise ValueError(f"{spec.n} qubits exceeds the dense-simulation cap {_MAX_QUBITS}")
    n = spec.n
    dim = 1 << n
    state = np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)

    # bit j of the basis index is qubit j+1; bit 0 means spin +1
    indices = np.arange(dim, dtype=np.uint64)
    for u, v, coupling, gamma in spec.pairs:
        bits_u = (indices >> np.uint64(u - 1)) & np.uint64(1)
        bits_v = (indices >> np.uint64(v - 1)) & np.uint64(1)
        signs = 1.0 - 2.0 * ((bits_u ^ bits_v).astype(np.float64))
        state *= np.exp(-1j * gamma * coupling * signs)

    for qubit in range(n):
        beta = spec.betas[qubit]
        if beta != 0.0:
            c, s = math.cos(beta), math.sin(beta)
            gate = np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
            state = _apply_single(state, gate, qubit, n)
    for qubit in range(n):
        alpha = spec.alphas[qubit]
        if alpha != 0.0:
            c, s = math.cos(alpha), math.sin(alpha)
            gate = np.array([[c, -s], [s, c]], dtype=np.complex128)
            state = _apply_single(state, gate, qubit, n)
    return state


def _apply_single(state: np.ndarray, gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    # reshape so the target qubit's bit becomes the middle axis
    lower = 1 << qubit
    upper = 1 << (n - qubit - 1)
    view = state.reshape(upper, 2, lower)
    return np.einsum("ab,ubl->ual", gate, view).reshape(-1)


def _z_signs(n: int, qubit: int) -> np.ndarray:
    indices = np.arange(1 << n, dtype=np.uint64)
    bits = (indices >> np.uint64(qubit - 1)) & np.uint64(1)
    return 1.0 - 2.0 * bits.astype(np.float64)


def simulate_p1(spec: CircuitSpec, pairs=()) -> QuantumStateReport:
    """Exact expectations of the depth-1 state.

    Reports <ZuZv> for the circuit's own pairs plus any extra requested pairs,
    <Zj> for every qubit, and the coupling-weighted pair energy.
    """
    state = _statevector(spec)
    probs = np.abs(state) ** 2

    z_single = tuple(float(np.dot(probs, _z_signs(spec.n, q))) for q in range(1, spec.n + 1))

    wanted: dict[tuple[int, int], float] = {}
    request = [(u, v) for u, v, _, _ in spec.pairs]
    request.extend((min(p), max(p)) for p in pairs)
    for u, v in request:
        if (u, v) in wanted:
            continue
        signs = _z_signs(spec.n, u) * _z_signs(spec.n, v)
        wanted[(u, v)] = float(np.dot(probs, signs))

    energy = sum(coupling * wanted[(u, v)] for u, v, coupling, _ in spec.pairs)
    return QuantumStateReport(pair_zz=wanted, single_z=z_single, energy=float(energy))


def sample_bitstrings(spec: CircuitSpec, count: int, seed: int) -> list[tuple[int, ...]]:
    """Independent computational-basis samples; bit 0 means spin +1 / red."""
    state = _statevector(spec)
    probs = np.abs(state) ** 2
    cumulative = np.cumsum(probs)
    cumulative[-1] = 1.0
    stream = Stream(mix(seed, spec.n, count))
    draws = np.array([stream.uniform() for _ in range(count)])
    picks = np.searchsorted(cumulative, draws, side="right")
    return [
        tuple((int(idx) >> q) & 1 for q in range(spec.n))
        for idx in picks
    ]


def bpsp_bruteforce(x: BpspInstance, max_cars: int = 24) -> tuple[int, str]:
    """Exact minimum swap count by enumerating initial-colour strings.

    Enumerates with car 1 pinned red (a global flip never changes the
    count), walking a Gray code so each step retouches only the boundaries
    that mention the flipped car.
    """
    if x.n > max_cars:
        raise ValueError(f"refusing exhaustive search on {x.n} > {max_cars} cars")
    n = x.n
    w = x.word
    etas = eta_values(x)
    # boundary term i is eta_i XOR bit(x_i) XOR bit(x_{i+1}); flipping a car
    # toggles exactly the boundaries naming it once
    touched: list[list[int]] = [[] for _ in range(n + 1)]
    for i in range(len(w) - 1):
        if w[i] != w[i + 1]:
            touched[w[i]].append(i)
            touched[w[i + 1]].append(i)

    bits = [0] * (n + 1)  # car id -> 0 (red) / 1 (blue)
    terms = [e ^ bits[w[i]] ^ bits[w[i + 1]] for i, e in enumerate(etas)]
    cost = sum(terms)
    best_cost = cost
    best_bits = bits.copy()
    for step in range(1, 1 << (n - 1)):
        car = 2 + (step & -step).bit_length() - 1
        bits[car] ^= 1
        for i in touched[car]:
            old = terms[i]
            terms[i] = old ^ 1
            cost += 1 - 2 * old
        if cost < best_cost:
            best_cost = cost
            best_bits = bits.copy()
    z = "".join(RED if best_bits[car] == 0 else BLUE for car in range(1, n + 1))
    return best_cost, expand(x, z)

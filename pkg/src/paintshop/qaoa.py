"""Depth-1 variational engines: exact expectations and parameter search.

Two ansatz families share one algebraic core:

* plain depth-1 ansatz: one shared phase angle and one shared X-mixer angle;
  pair expectations have a closed form in sin(4*beta), sin^2(2*beta) and
  products of cos(2*gamma*J) over the endpoint neighbourhoods, so the energy
  collapses to offset + a(gamma)*sin(4*beta) + b(gamma)*sin^2(2*beta) and
  the mixer angle is optimised in closed form per gamma;
* the overparameterised variant: one phase angle per coupling and per-qubit
  X/Y mixer angles (the shared X=Y mixer by default).  Expectations depend
  only on each pair's one-hop neighbourhood, so they are evaluated exactly
  either by dense simulation of that lightcone (the reference path) or by
  the same closed form generalised to per-edge angles (the fast path used
  inside the optimiser; both paths agree to near machine precision).

Rotation convention is exp(-i * angle * P) throughout, matching the dense
simulator, which arbitrates all signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import Stream, mix
from .encoding import expand, icc_swap_count_spin, spins_to_colors
from .instances import BpspInstance
from .oracles import CircuitSpec, sample_bitstrings, simulate_p1
from .reduction import IsingHamiltonian, build_ising

__all__ = [
    "Qaoa1Params",
    "XqaoaParams",
    "MIXER_KINDS",
    "qaoa1_pair_expectation",
    "qaoa1_energy",
    "qaoa1_optimize",
    "qaoa1_correlations",
    "qaoa1_solve",
    "xqaoa_energy",
    "xqaoa_gradient",
    "xqaoa_optimize",
    "xqaoa_optimize_all",
    "extract_cut",
    "xqaoa_solve",
    "xqaoa_maxcut_backend",
]

MIXER_KINDS = ("x=y", "x", "y", "xy")

_LIGHTCONE_CAP = 20


@dataclass(frozen=True)
class Qaoa1Params:
    """Shared mixer and phase angles, beta in [0, pi), gamma in [-pi, pi)."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and math.isfinite(self.gamma)):
            raise ValueError("angles must be finite")


@dataclass(frozen=True)
class XqaoaParams:
    """Per-coupling phase angles and per-qubit mixer angles.

    gammas is aligned with the Hamiltonian's couplings in sorted pair order.
    betas are X-rotation angles and alphas Y-rotation angles; the mixer kind
    constrains them: "x=y" ties alphas to betas (the default ansatz), "x"
    zeroes alphas, "y" zeroes betas, "xy" leaves both free.
    """

    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    alphas: tuple[float, ...]
    kind: str = "x=y"

    def __post_init__(self):
        if self.kind not in MIXER_KINDS:
            raise ValueError(f"unknown mixer kind {self.kind!r}")
        if len(self.betas) != len(self.alphas):
            raise ValueError("betas and alphas must have one entry per vertex")
        if self.kind == "x=y" and self.betas != self.alphas:
            raise ValueError("the x=y mixer shares one angle per vertex")
        if self.kind == "x" and any(a != 0.0 for a in self.alphas):
            raise ValueError("the x mixer requires zero Y-rotation angles")
        if self.kind == "y" and any(b != 0.0 for b in self.betas):
            raise ValueError("the y mixer requires zero X-rotation angles")

    @classmethod
    def shared(cls, h: IsingHamiltonian, params: Qaoa1Params) -> "XqaoaParams":
        """Tie all angles to reproduce the plain depth-1 ansatz."""
        m = len(h.couplings2)
        return cls(
            gammas=(params.gamma,) * m,
            betas=(params.beta,) * h.n,
            alphas=(0.0,) * h.n,
            kind="x",
        )


# ---------------------------------------------------------------------------
# shared algebraic core
# ---------------------------------------------------------------------------


class _Structure:
    """Precomputed neighbourhood indexing for the closed-form expectations."""

    def __init__(self, h: IsingHamiltonian):
        self.n = h.n
        self.offset = h.offset2 / 2.0
        items = sorted(h.couplings2.items())
        self.pairs = [pair for pair, _ in items]
        self.J = np.array([c2 / 2.0 for _, c2 in items], dtype=float)
        self.m = len(self.pairs)
        self.edge_index = {pair: e for e, pair in enumerate(self.pairs)}

        # incident[vertex] -> list of (edge id, far vertex)
        incident: dict[int, list[tuple[int, int]]] = {}
        for e, (u, v) in enumerate(self.pairs):
            incident.setdefault(u, []).append((e, v))
            incident.setdefault(v, []).append((e, u))
        self.incident = incident

        # per edge: neighbouring edge ids on each side, aligned lists of
        # common-neighbour edge pairs, and the non-common remainders used by
        # the second-order term
        self.nbr_u: list[list[int]] = []
        self.nbr_v: list[list[int]] = []
        self.common: list[list[tuple[int, int]]] = []
        self.outer_u: list[list[int]] = []
        self.outer_v: list[list[int]] = []
        for e, (u, v) in enumerate(self.pairs):
            side_u = [(f, w) for f, w in incident[u] if f != e]
            side_v = [(f, w) for f, w in incident[v] if f != e]
            self.nbr_u.append([f for f, _ in side_u])
            self.nbr_v.append([f for f, _ in side_v])
            far_u = dict((w, f) for f, w in side_u)
            far_v = dict((w, f) for f, w in side_v)
            shared = far_u.keys() & far_v.keys()
            if shared:
                ordered = sorted(shared)
                self.common.append([(far_u[w], far_v[w]) for w in ordered])
                self.outer_u.append([f for f, w in side_u if w not in shared])
                self.outer_v.append([f for f, w in side_v if w not in shared])
            else:
                self.common.append([])
                self.outer_u.append(self.nbr_u[-1])
                self.outer_v.append(self.nbr_v[-1])

        self._build_flat()

    def _build_flat(self) -> None:
        """Flattened index arrays for grid-vectorised evaluation.

        Every segment gets a sentinel column (index m, value 1) appended so
        reduceat never sees an empty segment.  Neighbourhood products come
        from per-vertex full products divided by the excluded edge's cosine,
        so only per-vertex and per-triangle segments are needed.
        """
        sentinel = self.m

        def flatten(groups: list[list[int]]):
            idx: list[int] = []
            starts: list[int] = []
            for g in groups:
                starts.append(len(idx))
                idx.extend(g)
                idx.append(sentinel)
            return np.array(idx, dtype=np.intp), np.array(starts, dtype=np.intp)

        vertices = sorted(self.incident)
        position = {v: i for i, v in enumerate(vertices)}
        self.flat_incident = flatten([[f for f, _ in self.incident[v]] for v in vertices])
        self.u_pos = np.array([position[u] for u, _ in self.pairs], dtype=np.intp)
        self.v_pos = np.array([position[v] for _, v in self.pairs], dtype=np.intp)

        self.tri_edges = np.array(
            [e for e in range(self.m) if self.common[e]], dtype=np.intp
        )
        tri = [int(e) for e in self.tri_edges]
        self.flat_tri_cu = flatten([[fu for fu, _ in self.common[e]] for e in tri])
        self.flat_tri_cv = flatten([[fv for _, fv in self.common[e]] for e in tri])
        fu_idx: list[int] = []
        fv_idx: list[int] = []
        starts: list[int] = []
        for e in tri:
            starts.append(len(fu_idx))
            for a, b in self.common[e]:
                fu_idx.append(a)
                fv_idx.append(b)
            fu_idx.append(sentinel)
            fv_idx.append(sentinel)
        self.flat_tri_pairs = (
            np.array(fu_idx, dtype=np.intp),
            np.array(fv_idx, dtype=np.intp),
            np.array(starts, dtype=np.intp),
        )


def _prod(values: np.ndarray, idx: list[int]) -> float:
    out = 1.0
    for f in idx:
        out *= values[f]
    return out


def _vertex_coeffs(alphas, betas):
    """Heisenberg picture of Z under the mixer: a*Z + b*Y + c*X per qubit."""
    a = np.cos(2.0 * alphas) * np.cos(2.0 * betas)
    b = np.cos(2.0 * alphas) * np.sin(2.0 * betas)
    c = -np.sin(2.0 * alphas)
    return a, b, c


def _expectations(s: _Structure, theta: np.ndarray, A, B, C, want_energy: bool = True):
    """All pair expectations (and energy) at per-edge phase arguments theta."""
    ct = np.cos(theta)
    st = np.sin(theta)
    M = np.empty(s.m)
    for e in range(s.m):
        u, v = s.pairs[e]
        pu = _prod(ct, s.nbr_u[e])
        pv = _prod(ct, s.nbr_v[e])
        term1 = st[e] * (B[u - 1] * A[v - 1] * pu + A[u - 1] * B[v - 1] * pv)
        pm = pp = 1.0
        for fu, fv in s.common[e]:
            pm *= math.cos(theta[fu] - theta[fv])
            pp *= math.cos(theta[fu] + theta[fv])
        ou = _prod(ct, s.outer_u[e])
        ov = _prod(ct, s.outer_v[e])
        core = 0.5 * (
            B[u - 1] * B[v - 1] * (pm - pp) + C[u - 1] * C[v - 1] * (pm + pp)
        )
        M[e] = term1 + core * ou * ov
    energy = s.offset + float(np.dot(s.J, M)) if want_energy else 0.0
    return M, energy


# ---------------------------------------------------------------------------
# plain depth-1 ansatz
# ---------------------------------------------------------------------------


def _shared_theta(s: _Structure, gamma: float) -> np.ndarray:
    return 2.0 * gamma * s.J


def _segment_products(values: np.ndarray, idx: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """Per-segment products along the last axis of a (..., m+1) value array."""
    gathered = values[..., idx]
    return np.multiply.reduceat(gathered, starts, axis=-1)


def _qaoa1_coeffs_grid(s: _Structure, gammas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised energy decomposition over a whole gamma grid.

    Returns (a, b) arrays with E(beta, gamma) = offset + a*sin(4 beta)
    + b*sin^2(2 beta) at each grid point.  Neighbourhood products are full
    per-vertex products divided by the excluded cosine; an exact cosine zero
    (never hit on real grids) falls back to honest per-segment products.
    """
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    theta = 2.0 * gammas[:, None] * s.J[None, :]
    ct = np.cos(theta)
    if not np.all(ct):
        return _qaoa1_coeffs_grid_slow(s, gammas, theta, ct)
    st = np.sin(theta)
    ctp = np.concatenate([ct, np.ones((len(gammas), 1))], axis=1)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        full = _segment_products(ctp, *s.flat_incident)
        pu = full[:, s.u_pos] / ct
        pv = full[:, s.v_pos] / ct
        a = 0.5 * np.dot(st * (pu + pv), s.J)

        if len(s.tri_edges) == 0:
            b = np.zeros(len(gammas))
        else:
            tri = s.tri_edges
            cu = _segment_products(ctp, *s.flat_tri_cu)
            cv = _segment_products(ctp, *s.flat_tri_cv)
            ou = pu[:, tri] / cu
            ov = pv[:, tri] / cv
            fu, fv, starts = s.flat_tri_pairs
            padded = np.concatenate([theta, np.zeros((len(gammas), 1))], axis=1)
            pm = np.multiply.reduceat(
                np.cos(padded[:, fu] - padded[:, fv]), starts, axis=-1
            )
            pp = np.multiply.reduceat(
                np.cos(padded[:, fu] + padded[:, fv]), starts, axis=-1
            )
            b = 0.5 * np.dot((pm - pp) * ou * ov, s.J[tri])

    # product underflow can turn a leave-one-out quotient into 0/0; redo
    # affected grid points with the division-free scalar path
    bad = ~(np.isfinite(a) & np.isfinite(b))
    if np.any(bad):
        for i in np.nonzero(bad)[0]:
            a[i], b[i] = _qaoa1_coeffs(s, float(gammas[i]))
    return a, b


def _qaoa1_coeffs_grid_slow(s, gammas, theta, ct) -> tuple[np.ndarray, np.ndarray]:
    del theta, ct
    a = np.empty(len(gammas))
    b = np.empty(len(gammas))
    for i, gamma in enumerate(gammas):
        a[i], b[i] = _qaoa1_coeffs(s, float(gamma))
    return a, b


def _qaoa1_coeffs(s: _Structure, gamma: float) -> tuple[float, float]:
    """Scalar twin of the grid evaluation (plain loops beat numpy at one point)."""
    two_gamma = 2.0 * gamma
    theta = [two_gamma * j for j in s.J]
    ct = [math.cos(t) for t in theta]
    st = [math.sin(t) for t in theta]
    a = 0.0
    b = 0.0
    for e in range(s.m):
        j = s.J[e]
        pu = 1.0
        for f in s.nbr_u[e]:
            pu *= ct[f]
        pv = 1.0
        for f in s.nbr_v[e]:
            pv *= ct[f]
        a += j * 0.5 * st[e] * (pu + pv)
        if s.common[e]:
            pm = pp = 1.0
            for fu, fv in s.common[e]:
                pm *= math.cos(theta[fu] - theta[fv])
                pp *= math.cos(theta[fu] + theta[fv])
            ou = 1.0
            for f in s.outer_u[e]:
                ou *= ct[f]
            ov = 1.0
            for f in s.outer_v[e]:
                ov *= ct[f]
            b += j * 0.5 * (pm - pp) * ou * ov
    return a, b


def _best_beta(a: float, b: float) -> tuple[float, float]:
    """Minimise a*sin(t) + (b/2)*(1 - cos(t)) over t = 4*beta.

    Returns (beta in [0, pi/2), minimum value of the two-term expression).
    """
    half_b = 0.5 * b
    radius = math.hypot(a, half_b)
    if radius < 1e-300:
        return 0.0, 0.0
    psi = math.atan2(half_b, a)
    t = psi - 0.5 * math.pi
    beta = (t / 4.0) % (0.5 * math.pi)
    value = half_b - radius
    return beta, value


def qaoa1_energy(h: IsingHamiltonian, params: Qaoa1Params) -> float:
    """Exact energy of the shared-angle depth-1 state."""
    s = _Structure(h)
    a, b = _qaoa1_coeffs(s, params.gamma)
    t = 4.0 * params.beta
    return s.offset + a * math.sin(t) + 0.5 * b * (1.0 - math.cos(t))


def qaoa1_pair_expectation(h: IsingHamiltonian, params: Qaoa1Params, pair) -> float:
    """Exact <Z_u Z_v> of the shared-angle depth-1 state for any vertex pair."""
    u, v = sorted(pair)
    if not (1 <= u < v <= h.n):
        raise ValueError(f"pair ({u}, {v}) outside 1..{h.n}")
    s = _Structure(h)
    A, B, C = _vertex_coeffs(np.zeros(h.n), np.full(h.n, params.beta))
    theta = _shared_theta(s, params.gamma)
    if (u, v) in s.edge_index:
        M, _ = _expectations(s, theta, A, B, C, want_energy=False)
        return float(M[s.edge_index[(u, v)]])
    # uncoupled pair: only the second-order term can survive
    ct = np.cos(theta)
    far_u = dict((w, f) for f, w in s.incident.get(u, []))
    far_v = dict((w, f) for f, w in s.incident.get(v, []))
    shared = sorted((far_u.keys() & far_v.keys()) - {u, v})
    pm = pp = 1.0
    for w in shared:
        pm *= math.cos(theta[far_u[w]] - theta[far_v[w]])
        pp *= math.cos(theta[far_u[w]] + theta[far_v[w]])
    outer_u = [f for w, f in far_u.items() if w not in shared and w != v]
    outer_v = [f for w, f in far_v.items() if w not in shared and w != u]
    core = 0.5 * (B[u - 1] * B[v - 1] * (pm - pp) + C[u - 1] * C[v - 1] * (pm + pp))
    return float(core * _prod(ct, outer_u) * _prod(ct, outer_v))


def qaoa1_optimize(h: IsingHamiltonian, grid_size: int = 1024) -> Qaoa1Params:
    """Grid-plus-refinement search over gamma with the mixer angle in closed form.

    Sweeps a uniform grid on [-pi, pi), then narrows around the best point by
    golden-section search to a bracket of width 1e-10.
    """
    return _qaoa1_optimize_on(_Structure(h), grid_size)


def _qaoa1_optimize_on(s: _Structure, grid_size: int = 1024) -> Qaoa1Params:
    if s.m == 0:
        return Qaoa1Params(0.0, 0.0)

    def best_energy(gamma: float) -> float:
        a, b = _qaoa1_coeffs(s, gamma)
        return s.offset + _best_beta(a, b)[1]

    gammas = -math.pi + 2.0 * math.pi * np.arange(grid_size) / grid_size
    if grid_size % 2 == 0:
        # a is odd and b even in gamma, so the non-negative half (0..pi)
        # determines every grid value: gamma_i = -(pi - i*step) for i < half
        half = grid_size // 2
        a_h, b_h = _qaoa1_coeffs_grid(s, math.pi * np.arange(half + 1) / half)
        a_grid = np.concatenate([-a_h[half:0:-1], a_h[:half]])
        b_grid = np.concatenate([b_h[half:0:-1], b_h[:half]])
    else:
        a_grid, b_grid = _qaoa1_coeffs_grid(s, gammas)
    radius = np.hypot(a_grid, 0.5 * b_grid)
    values = s.offset + 0.5 * b_grid - radius
    k = int(np.argmin(values))
    step = 2.0 * math.pi / grid_size
    lo, hi = gammas[k] - step, gammas[k] + step

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = best_energy(c), best_energy(d)
    while hi - lo > 1e-10:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = best_energy(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = best_energy(d)
    gamma = 0.5 * (lo + hi)
    if best_energy(gammas[k]) < best_energy(gamma):
        gamma = float(gammas[k])
    a, b = _qaoa1_coeffs(s, gamma)
    beta, _ = _best_beta(a, b)
    return Qaoa1Params(beta=beta, gamma=float(gamma))


def qaoa1_correlations(h: IsingHamiltonian, params: Qaoa1Params) -> dict[tuple[int, int], float]:
    """<Z_u Z_v> for every coupled pair at the given shared angles."""
    return _qaoa1_correlations_on(_Structure(h), params)


def _qaoa1_correlations_on(s: _Structure, params: Qaoa1Params) -> dict[tuple[int, int], float]:
    A, B, C = _vertex_coeffs(np.zeros(s.n), np.full(s.n, params.beta))
    theta = _shared_theta(s, params.gamma)
    M, _ = _expectations(s, theta, A, B, C, want_energy=False)
    return {pair: float(M[e]) for e, pair in enumerate(s.pairs)}


# ---------------------------------------------------------------------------
# overparameterised ansatz: lightcone reference path
# ---------------------------------------------------------------------------


def _mixer_arrays(h: IsingHamiltonian, params: XqaoaParams):
    if len(params.betas) != h.n:
        raise ValueError("one mixer angle per vertex required")
    if len(params.gammas) != len(h.couplings2):
        raise ValueError("one phase angle per coupling required")
    return np.array(params.betas), np.array(params.alphas)


def _lightcone_spec(
    h: IsingHamiltonian, params: XqaoaParams, region: list[int]
) -> tuple[CircuitSpec, dict[int, int]]:
    """Dense-simulation spec of the sub-Hamiltonian induced on a vertex set."""
    if len(region) > _LIGHTCONE_CAP:
        raise ValueError(f"lightcone of {len(region)} qubits exceeds {_LIGHTCONE_CAP}")
    local = {v: i + 1 for i, v in enumerate(sorted(region))}
    pairs = []
    ordered = sorted(h.couplings2)
    for e, (u, v) in enumerate(ordered):
        if u in local and v in local:
            a, b = sorted((local[u], local[v]))
            pairs.append((a, b, h.couplings2[(u, v)] / 2.0, params.gammas[e]))
    betas = tuple(params.betas[v - 1] for v in sorted(region))
    alphas = tuple(params.alphas[v - 1] for v in sorted(region))
    return CircuitSpec(len(region), tuple(pairs), betas, alphas), local


def _neighbours(h: IsingHamiltonian) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(1, h.n + 1)}
    for u, v in h.couplings2:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def xqaoa_energy(h: IsingHamiltonian, params: XqaoaParams) -> float:
    """Reference energy: per-pair dense simulation of the one-hop lightcone."""
    _mixer_arrays(h, params)
    adj = _neighbours(h)
    total = h.offset2 / 2.0
    for (u, v), c2 in sorted(h.couplings2.items()):
        region = sorted({u, v} | adj[u] | adj[v])
        spec, local = _lightcone_spec(h, params, region)
        report = simulate_p1(spec, [(local[u], local[v])])
        key = (min(local[u], local[v]), max(local[u], local[v]))
        total += (c2 / 2.0) * report.pair_zz[key]
    return float(total)


# ---------------------------------------------------------------------------
# overparameterised ansatz: closed-form fast path with analytic gradient
# ---------------------------------------------------------------------------


def _theta_from_gammas(s: _Structure, gammas: np.ndarray) -> np.ndarray:
    return 2.0 * gammas * s.J


def _xqaoa_value_core(s: _Structure, gammas, alphas, betas):
    A, B, C = _vertex_coeffs(alphas, betas)
    theta = _theta_from_gammas(s, gammas)
    _, energy = _expectations(s, theta, A, B, C)
    return energy


def _xqaoa_value_grad_core(s: _Structure, gammas, alphas, betas):
    """Energy plus exact partials in (gamma, alpha, beta) coordinates."""
    A, B, C = _vertex_coeffs(alphas, betas)
    theta = _theta_from_gammas(s, gammas)
    ct = np.cos(theta)
    st = np.sin(theta)

    gA = np.zeros(s.n)
    gB = np.zeros(s.n)
    gC = np.zeros(s.n)
    gT = np.zeros(s.m)
    energy = s.offset

    for e in range(s.m):
        u, v = s.pairs[e]
        ui, vi = u - 1, v - 1
        J = s.J[e]
        nu, nv = s.nbr_u[e], s.nbr_v[e]
        pu = _prod(ct, nu)
        pv = _prod(ct, nv)

        pm_terms = []
        pp_terms = []
        pm = pp = 1.0
        for fu, fv in s.common[e]:
            tm = theta[fu] - theta[fv]
            tp = theta[fu] + theta[fv]
            pm_terms.append((math.cos(tm), math.sin(tm)))
            pp_terms.append((math.cos(tp), math.sin(tp)))
            pm *= pm_terms[-1][0]
            pp *= pp_terms[-1][0]
        ou = _prod(ct, s.outer_u[e])
        ov = _prod(ct, s.outer_v[e])

        bb = B[ui] * B[vi]
        cc = C[ui] * C[vi]
        core = 0.5 * (bb * (pm - pp) + cc * (pm + pp))
        term1 = st[e] * (B[ui] * A[vi] * pu + A[ui] * B[vi] * pv)
        energy += J * (term1 + core * ou * ov)

        # mixer-coefficient partials
        gA[ui] += J * st[e] * B[vi] * pv
        gA[vi] += J * st[e] * B[ui] * pu
        gB[ui] += J * (st[e] * A[vi] * pu + 0.5 * B[vi] * (pm - pp) * ou * ov)
        gB[vi] += J * (st[e] * A[ui] * pv + 0.5 * B[ui] * (pm - pp) * ou * ov)
        gC[ui] += J * 0.5 * C[vi] * (pm + pp) * ou * ov
        gC[vi] += J * 0.5 * C[ui] * (pm + pp) * ou * ov

        # phase-argument partials
        gT[e] += J * ct[e] * (B[ui] * A[vi] * pu + A[ui] * B[vi] * pv)
        for f in nu:
            gT[f] += J * st[e] * B[ui] * A[vi] * (-st[f]) * _prod_excluding(ct, nu, f)
        for f in nv:
            gT[f] += J * st[e] * A[ui] * B[vi] * (-st[f]) * _prod_excluding(ct, nv, f)
        for f in s.outer_u[e]:
            gT[f] += J * core * (-st[f]) * _prod_excluding(ct, s.outer_u[e], f) * ov
        for f in s.outer_v[e]:
            gT[f] += J * core * ou * (-st[f]) * _prod_excluding(ct, s.outer_v[e], f)
        if s.common[e]:
            dcore_dpm = 0.5 * (bb + cc)
            dcore_dpp = 0.5 * (cc - bb)
            for k, (fu, fv) in enumerate(s.common[e]):
                cm, sm = pm_terms[k]
                cp, sp = pp_terms[k]
                pm_loo = _ratio_or_loo(pm, cm, pm_terms, k, 0)
                pp_loo = _ratio_or_loo(pp, cp, pp_terms, k, 1)
                common_scale = J * ou * ov
                gT[fu] += common_scale * (
                    dcore_dpm * (-sm) * pm_loo + dcore_dpp * (-sp) * pp_loo
                )
                gT[fv] += common_scale * (
                    dcore_dpm * sm * pm_loo + dcore_dpp * (-sp) * pp_loo
                )

    # chain to the raw parameters
    c2a = np.cos(2.0 * alphas)
    s2a = np.sin(2.0 * alphas)
    c2b = np.cos(2.0 * betas)
    s2b = np.sin(2.0 * betas)
    dE_dbeta = gA * (c2a * -2.0 * s2b) + gB * (c2a * 2.0 * c2b)
    dE_dalpha = gA * (-2.0 * s2a * c2b) + gB * (-2.0 * s2a * s2b) + gC * (-2.0 * c2a)
    dE_dgamma = gT * 2.0 * s.J
    return energy, dE_dgamma, dE_dalpha, dE_dbeta


def _prod_excluding(values: np.ndarray, idx: list[int], skip: int) -> float:
    out = 1.0
    for f in idx:
        if f != skip:
            out *= values[f]
    return out


def _ratio_or_loo(total: float, factor: float, terms, k: int, which: int) -> float:
    """Product of all cosines except entry k, robust to zero factors."""
    if abs(factor) > 1e-12:
        return total / factor
    out = 1.0
    for i, t in enumerate(terms):
        if i != k:
            out *= t[which]
    return out


def xqaoa_gradient(h: IsingHamiltonian, params: XqaoaParams) -> dict[str, tuple[float, ...]]:
    """Exact energy partials with respect to every parameter of the ansatz.

    Returns {"gammas": ..., "vertices": ...} where the vertex entries follow
    the mixer kind: the derivative with respect to the shared per-vertex
    angle for "x=y", with respect to beta for "x", alpha for "y"; for "xy"
    the key "vertices" holds the beta partials and "alphas" the alpha ones.
    """
    betas, alphas = _mixer_arrays(h, params)
    s = _Structure(h)
    _, d_gamma, d_alpha, d_beta = _xqaoa_value_grad_core(
        s, np.array(params.gammas), alphas, betas
    )
    out = {"gammas": tuple(float(g) for g in d_gamma)}
    if params.kind == "x=y":
        out["vertices"] = tuple(float(g) for g in (d_alpha + d_beta))
    elif params.kind == "x":
        out["vertices"] = tuple(float(g) for g in d_beta)
    elif params.kind == "y":
        out["vertices"] = tuple(float(g) for g in d_alpha)
    else:
        out["vertices"] = tuple(float(g) for g in d_beta)
        out["alphas"] = tuple(float(g) for g in d_alpha)
    return out


def _unpack(s: _Structure, kind: str, vec: np.ndarray):
    n, m = s.n, s.m
    if kind == "x=y":
        t = vec[:n]
        return vec[n:], t, t
    if kind == "x":
        return vec[n:], np.zeros(n), vec[:n]
    if kind == "y":
        return vec[n:], vec[:n], np.zeros(n)
    return vec[2 * n:], vec[n:2 * n], vec[:n]  # xy: betas first, then alphas


def _pack_grad(s: _Structure, kind: str, d_gamma, d_alpha, d_beta) -> np.ndarray:
    if kind == "x=y":
        return np.concatenate([d_alpha + d_beta, d_gamma])
    if kind == "x":
        return np.concatenate([d_beta, d_gamma])
    if kind == "y":
        return np.concatenate([d_alpha, d_gamma])
    return np.concatenate([d_beta, d_alpha, d_gamma])


def _lbfgs(fun, x0: np.ndarray, max_iter: int, grad_tol: float, memory: int = 10):
    """Limited-memory quasi-Newton descent with Armijo backtracking."""
    x = x0.copy()
    f, g = fun(x)
    s_hist: list[np.ndarray] = []
    y_hist: list[np.ndarray] = []
    for _ in range(max_iter):
        if np.max(np.abs(g)) < grad_tol:
            break
        q = g.copy()
        alpha_hist = []
        for si, yi in zip(reversed(s_hist), reversed(y_hist)):
            rho = 1.0 / float(np.dot(yi, si))
            a = rho * float(np.dot(si, q))
            alpha_hist.append((a, rho))
            q -= a * yi
        if y_hist:
            last_y = y_hist[-1]
            scale = float(np.dot(s_hist[-1], last_y) / np.dot(last_y, last_y))
            q *= scale
        for (a, rho), si, yi in zip(reversed(alpha_hist), s_hist, y_hist):
            b = rho * float(np.dot(yi, q))
            q += (a - b) * si
        direction = -q
        slope = float(np.dot(g, direction))
        if slope >= 0.0:
            direction = -g
            slope = -float(np.dot(g, g))
        step = 1.0
        accepted = False
        for _ in range(40):
            x_new = x + step * direction
            f_new, g_new = fun(x_new)
            if f_new <= f + 1e-4 * step * slope:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        s_vec = x_new - x
        y_vec = g_new - g
        if float(np.dot(s_vec, y_vec)) > 1e-10 * float(
            np.linalg.norm(s_vec) * np.linalg.norm(y_vec) + 1e-300
        ):
            s_hist.append(s_vec)
            y_hist.append(y_vec)
            if len(s_hist) > memory:
                s_hist.pop(0)
                y_hist.pop(0)
        x, f, g = x_new, f_new, g_new
    return x, f


_INIT_SCALE = 1e-4


def xqaoa_optimize(
    h: IsingHamiltonian,
    restarts: int,
    seed: int,
    kind: str = "x=y",
    max_iter: int = 500,
    grad_tol: float = 1e-6,
) -> tuple[XqaoaParams, float]:
    """Multi-start descent over all angles; returns the best restart.

    Restarts initialise with small uniform angles around the zero-angle
    stationary point, so each run descends from the uniform-superposition
    region along a randomly broken symmetry direction.  Restart k draws from
    the substream mix(seed, k), so enlarging the restart budget never
    changes earlier restarts.
    """
    best = None
    for candidate in xqaoa_optimize_all(h, restarts, seed, kind, max_iter, grad_tol):
        if best is None or candidate[1] < best[1]:
            best = candidate
    return best


def xqaoa_optimize_all(
    h: IsingHamiltonian,
    restarts: int,
    seed: int,
    kind: str = "x=y",
    max_iter: int = 500,
    grad_tol: float = 1e-6,
) -> list[tuple[XqaoaParams, float]]:
    """Every restart's optimised parameters and energy, in restart order."""
    if restarts < 1:
        raise ValueError("at least one restart required")
    if kind not in MIXER_KINDS:
        raise ValueError(f"unknown mixer kind {kind!r}")
    s = _Structure(h)
    n_vertex = 2 * s.n if kind == "xy" else s.n
    dim = n_vertex + s.m

    def fun(vec: np.ndarray):
        gammas, alphas, betas = _unpack(s, kind, vec)
        energy, d_gamma, d_alpha, d_beta = _xqaoa_value_grad_core(s, gammas, alphas, betas)
        return energy, _pack_grad(s, kind, d_gamma, d_alpha, d_beta)

    results = []
    for k in range(restarts):
        stream = Stream(mix(seed, k))
        vec = np.empty(dim)
        for i in range(dim):
            vec[i] = (stream.uniform() * 2.0 - 1.0) * _INIT_SCALE
        x, f = _lbfgs(fun, vec, max_iter, grad_tol)
        gammas, alphas, betas = _unpack(s, kind, x)
        params = XqaoaParams(
            gammas=tuple(float(g) for g in gammas),
            betas=tuple(float(b) for b in betas),
            alphas=tuple(float(a) for a in alphas),
            kind=kind,
        )
        results.append((params, float(f)))
    return results


def extract_cut(h: IsingHamiltonian, params: XqaoaParams) -> tuple[int, ...]:
    """Deterministic rounding: each spin takes the sign of its <Z_j>.

    <Z_j> comes from a dense simulation of the qubit's own lightcone (the
    qubit and its coupled neighbours); values within 1e-9 of zero round up.
    """
    _mixer_arrays(h, params)
    adj = _neighbours(h)
    spins = []
    for j in range(1, h.n + 1):
        region = sorted({j} | adj[j])
        spec, local = _lightcone_spec(h, params, region)
        report = simulate_p1(spec)
        value = report.single_z[local[j] - 1]
        spins.append(-1 if value < -1e-9 else 1)
    return tuple(spins)


def xqaoa_solve(
    x: BpspInstance, restarts: int, seed: int, kind: str = "x=y"
) -> tuple[int, str]:
    """End-to-end solve: optimise the ansatz, round, and score classically."""
    h = build_ising(x)
    params, _ = xqaoa_optimize(h, restarts, seed, kind=kind)
    spins = extract_cut(h, params)
    cost = icc_swap_count_spin(x, spins)
    return cost, expand(x, spins_to_colors(spins))


def qaoa1_solve(
    x: BpspInstance, seed: int, samples: int = 4096
) -> tuple[int, str]:
    """Shared-angle ansatz end to end: optimise, sample, keep the best string.

    Dense sampling caps the instance size at the simulator limit; larger
    instances should use the recursive or overparameterised solvers.
    """
    h = build_ising(x)
    params = qaoa1_optimize(h)
    pairs = tuple(
        (u, v, c2 / 2.0, params.gamma) for (u, v), c2 in sorted(h.couplings2.items())
    )
    spec = CircuitSpec(x.n, pairs, (params.beta,) * x.n, (0.0,) * x.n)
    best_cost = None
    best_spins = None
    for bits in sample_bitstrings(spec, samples, seed):
        spins = tuple(1 - 2 * b for b in bits)
        cost = h.energy(spins)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_spins = spins
    return best_cost, expand(x, spins_to_colors(best_spins))


def xqaoa_maxcut_backend(restarts: int, seed: int, kind: str = "x=y"):
    """Adapter: solve weighted MaxCut on a graph via the overparameterised ansatz."""

    def backend(graph):
        from .reduction import cut_weight

        h = IsingHamiltonian(graph.n, 0, {(u, v): w for u, v, w in graph.edges})
        params, _ = xqaoa_optimize(h, restarts, seed, kind=kind)
        z = spins_to_colors(extract_cut(h, params))
        return cut_weight(graph, z), z

    return backend

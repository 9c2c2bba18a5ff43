"""Exact-diagonalization diagnostics: Floquet/Hamiltonian spectra, symmetry
resolution at g = +-1, level-spacing ratio statistics, eigenstate
entanglement scans, zero-mode counting, and the single-excitation
tight-binding solver for the reference Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import pvbs
from .qops import (
    StateVector,
    eig_hermitian,
    eig_unitary,
    reduced_density_matrix,
    von_neumann_entropy,
)
from .scars import SingleExcitationState
from .tolerances import ZERO_MODE_TOL

ED_N_MAX = 12


@dataclass
class SpectrumRecord:
    value: float                     # energy or eigenphase in (-pi, pi]
    sector: str = "none"             # "even" | "odd" | "none"
    entanglement: float | None = None
    degeneracy_cluster: int = -1


@dataclass
class LevelStats:
    spacings: np.ndarray
    mean_r: float
    histogram: tuple[np.ndarray, np.ndarray]  # (bin edges, densities)


def page_entropy(n_qubits: int) -> float:
    """Typical half-chain entropy of a random pure state, (N ln 2 - 1)/2."""
    return (n_qubits * np.log(2.0) - 1.0) / 2.0


def reflection_permutation(n_qubits: int) -> np.ndarray:
    """Index permutation of the site-reversal operator (exact integers)."""
    idx = np.arange(2**n_qubits)
    out = np.zeros_like(idx)
    for site in range(n_qubits):
        bit = (idx >> (n_qubits - 1 - site)) & 1
        out |= bit << site
    return out


def parity_signs(n_qubits: int) -> np.ndarray:
    """Diagonal of the parity operator, (-1)^popcount."""
    idx = np.arange(2**n_qubits)
    pop = np.array([bin(i).count("1") for i in idx])
    return np.where(pop % 2, -1.0, 1.0)


def symmetry_operator(n_qubits: int, g: float) -> np.ndarray:
    """Dense Pi*R at g = 1 or R at g = -1 (both are involutions)."""
    if g not in (1, -1, 1.0, -1.0):
        raise ValueError("symmetry operator only applies at g = +-1")
    perm = reflection_permutation(n_qubits)
    op = np.zeros((2**n_qubits,) * 2)
    op[perm, np.arange(2**n_qubits)] = 1.0
    if g == 1:
        op = parity_signs(n_qubits)[:, None] * op
    return op


def _cluster(values: np.ndarray, gap: float, circular: bool = False) -> np.ndarray:
    """Assign consecutive sorted values closer than ``gap`` to one cluster id."""
    ids = np.zeros(len(values), dtype=int)
    cid = 0
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > gap:
            cid += 1
        ids[i] = cid
    if circular and len(values) > 1:
        wrap = (2 * np.pi - (values[-1] - values[0])) < gap
        if wrap and ids[-1] != ids[0]:
            ids[ids == ids[-1]] = ids[0]
    return ids


def floquet_spectrum(params: pvbs.ModelParams, cluster_gap: float = 1e-8):
    """Eigenphases/eigenvectors of the dense Floquet unitary with degeneracy
    cluster ids. Scar fixed points sit in the phase-0 cluster."""
    if params.n_qubits > ED_N_MAX:
        raise ValueError(f"N = {params.n_qubits} exceeds the dense ED cap ({ED_N_MAX})")
    u = pvbs.floquet_unitary(params)
    phases, vecs = eig_unitary(u)
    ids = _cluster(phases, cluster_gap, circular=True)
    records = [SpectrumRecord(value=float(p), degeneracy_cluster=int(c))
               for p, c in zip(phases, ids)]
    return records, vecs


def hamiltonian_spectrum(params: pvbs.ModelParams, cluster_gap: float = 1e-8):
    if params.n_qubits > ED_N_MAX:
        raise ValueError(f"N = {params.n_qubits} exceeds the dense ED cap ({ED_N_MAX})")
    h = pvbs.hamiltonian(params)
    evals, vecs = eig_hermitian(h)
    ids = _cluster(evals, cluster_gap)
    records = [SpectrumRecord(value=float(e), degeneracy_cluster=int(c))
               for e, c in zip(evals, ids)]
    return records, vecs


def symmetry_resolve(records, eigvecs: np.ndarray, g: float,
                     label_threshold: float = 0.99):
    """Label eigenvectors even/odd under Pi*R (g=1) or R (g=-1).

    Degenerate clusters are re-diagonalized in the symmetry operator before
    labelling; ``eigvecs`` is updated in place with the rotated columns.
    """
    n_qubits = int(np.log2(eigvecs.shape[0]))
    sym = symmetry_operator(n_qubits, g)
    clusters: dict[int, list[int]] = {}
    for i, rec in enumerate(records):
        clusters.setdefault(rec.degeneracy_cluster, []).append(i)
    for members in clusters.values():
        if len(members) > 1:
            block = eigvecs[:, members]
            m = block.conj().T @ sym @ block
            _, rot = np.linalg.eigh((m + m.conj().T) / 2)
            eigvecs[:, members] = block @ rot
    for i, rec in enumerate(records):
        v = eigvecs[:, i]
        expect = float(np.real(np.vdot(v, sym @ v)))
        if abs(expect) < label_threshold:
            raise RuntimeError(
                f"ambiguous symmetry label <v|S|v> = {expect:.4f} for level {i}"
            )
        rec.sector = "even" if expect > 0 else "odd"
    return records


def r_statistic(sorted_levels: np.ndarray) -> float:
    """Mean consecutive-spacing ratio min(s_i, s_i+1)/max(s_i, s_i+1)."""
    s = np.diff(np.sort(np.asarray(sorted_levels, dtype=float)))
    s = s[s > 0]
    r = np.minimum(s[:-1], s[1:]) / np.maximum(s[:-1], s[1:])
    return float(np.mean(r))


def level_spacing_stats(records, sector: str = "none",
                        exclude_cluster_min_size: int = 2,
                        n_bins: int = 40, min_levels: int = 200) -> LevelStats:
    """Spacing statistics of the levels in ``sector``.

    Floquet phases are used directly (uniform circular density, no
    unfolding). Degenerate clusters of size >= ``exclude_cluster_min_size``
    (notably the exact zero-phase scar cluster) are excluded first.
    """
    by_cluster: dict[int, int] = {}
    for rec in records:
        by_cluster[rec.degeneracy_cluster] = by_cluster.get(rec.degeneracy_cluster, 0) + 1
    values = [rec.value for rec in records
              if (sector == "none" or rec.sector == sector)
              and by_cluster[rec.degeneracy_cluster] < exclude_cluster_min_size]
    values = np.sort(np.asarray(values))
    if len(values) < min_levels:
        raise ValueError(f"only {len(values)} levels in sector '{sector}', "
                         f"need at least {min_levels}")
    spacings = np.diff(values)
    mean_r = r_statistic(values)
    mean_s = spacings.mean()
    dens, edges = np.histogram(spacings / mean_s, bins=n_bins, density=True)
    return LevelStats(spacings=spacings, mean_r=mean_r, histogram=(edges, dens))


def entanglement_scan(records, eigvecs: np.ndarray):
    """Fill the half-chain entanglement entropy of every eigenstate."""
    n_qubits = int(np.log2(eigvecs.shape[0]))
    half = range(0, n_qubits // 2)
    for i, rec in enumerate(records):
        state = StateVector(n_qubits, eigvecs[:, i])
        rec.entanglement = von_neumann_entropy(reduced_density_matrix(state, half))
    return records


def zero_mode_count(params: pvbs.ModelParams, tol: float = ZERO_MODE_TOL) -> int:
    """Number of Hamiltonian eigenvalues with |E| < tol."""
    evals, _ = eig_hermitian(pvbs.hamiltonian(params))
    return int(np.sum(np.abs(evals) < tol))


# -- single-excitation sector of the reference Hamiltonian -------------------

@dataclass
class TightBinding:
    """Tridiagonal block of the reference Hamiltonian at one excitation."""

    n_sites: int
    onsite: np.ndarray
    hopping: complex

    @classmethod
    def from_g(cls, g: complex, n_sites: int) -> "TightBinding":
        mod2 = abs(g) ** 2
        onsite = np.ones(n_sites)
        onsite[0] = 1.0 / (1.0 + mod2)
        onsite[-1] = mod2 / (1.0 + mod2)
        return cls(n_sites, onsite, -g / (1.0 + mod2))

    def dense(self) -> np.ndarray:
        m = np.diag(self.onsite).astype(np.complex128)
        off = np.full(self.n_sites - 1, self.hopping)
        m += np.diag(off, 1) + np.diag(off.conj(), -1)
        return m


def single_excitation_solver(g: complex, n_sites: int):
    """Eigenvalues/eigenvectors of the single-excitation block.

    The complex hopping phase is removed by a diagonal gauge transform so
    the solver runs on a real symmetric tridiagonal matrix; eigenvectors
    are rotated back afterwards.
    """
    tb = TightBinding.from_g(g, n_sites)
    t = tb.hopping
    phase = t / abs(t) if abs(t) > 0 else 1.0
    evals, vecs = scipy.linalg.eigh_tridiagonal(
        tb.onsite, np.full(n_sites - 1, abs(t)))
    gauge = phase ** (-np.arange(n_sites))
    vecs = gauge[:, None] * vecs.astype(np.complex128)
    states = [SingleExcitationState(n_sites, vecs[:, i]) for i in range(n_sites)]
    return evals, states


def gap_curve(g_grid, n_sites: int):
    """(g, epsilon_1 - epsilon_0) pairs from the single-excitation solver."""
    out = []
    for g in g_grid:
        evals, _ = single_excitation_solver(g, n_sites)
        out.append((float(np.real(g)), float(evals[1] - evals[0])))
    return out


# -- Theorem verification harnesses ------------------------------------------

def verify_frustration_free(params: pvbs.ModelParams, state: StateVector,
                            circuit_mode: bool = False) -> float:
    """||H|state>|| or, in circuit mode, ||U|state> - |state>||."""
    if circuit_mode:
        out = pvbs.apply_floquet_step(state, params)
        return float(np.linalg.norm(out.amplitudes - state.amplitudes))
    return pvbs.apply_hamiltonian(state, params).norm()


@dataclass
class ScalingResult:
    sizes: list[int]
    residuals: list[float]
    monotone: bool


def verify_aqmbs_scaling(g: complex, k: int, n_list, gen_even=None, gen_odd=None,
                         circuit_mode: bool = True, phi: float = 0.0) -> ScalingResult:
    """Residuals of the gapless state across sizes; flags non-monotonicity
    instead of raising."""
    from .scars import aqmbs_state

    residuals = []
    for n in n_list:
        kwargs = {}
        if gen_even is not None:
            kwargs["gen_even"] = gen_even
        if gen_odd is not None:
            kwargs["gen_odd"] = gen_odd
        params = pvbs.ModelParams(g=g, n_qubits=n, **kwargs)
        state = aqmbs_state(k, phi, n).embed()
        residuals.append(verify_frustration_free(params, state, circuit_mode))
    monotone = all(b < a for a, b in zip(residuals, residuals[1:]))
    return ScalingResult(sizes=list(n_list), residuals=residuals, monotone=monotone)

"""Closed-form construction of the special states and their analytic
properties: boundary/edge scars, single-excitation gapless states,
imbalance, half-chain entropy, localisation length and energy variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qops import StateVector, reduced_density_matrix, von_neumann_entropy


@dataclass
class SingleExcitationState:
    """Compressed state in the single-excitation basis |n> = |0..0 1_n 0..0>."""

    n_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.n_sites,):
            raise ValueError("amplitude count must equal n_sites")

    def normalized(self) -> "SingleExcitationState":
        return SingleExcitationState(self.n_sites,
                                     self.amplitudes / np.linalg.norm(self.amplitudes))

    def embed(self) -> StateVector:
        """Embed into the full 2^N statevector (qubit 0 = most significant bit)."""
        n = self.n_sites
        amps = np.zeros(2**n, dtype=np.complex128)
        for site, c in enumerate(self.amplitudes):
            amps[1 << (n - 1 - site)] = c
        return StateVector(n, amps)

    def overlap(self, other: "SingleExcitationState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def product_vacuum(n_qubits: int) -> StateVector:
    """|0>^N."""
    return StateVector.computational_basis(n_qubits, 0)


def all_ones(n_qubits: int) -> StateVector:
    """|1>^N."""
    return StateVector.computational_basis(n_qubits, 2**n_qubits - 1)


def left_edge(n_qubits: int) -> StateVector:
    """|1> (x) |0>^(N-1), the experimentally cheap proxy for the boundary scar."""
    return StateVector.computational_basis(n_qubits, 1 << (n_qubits - 1))


def boundary_state(g: complex, n_sites: int) -> SingleExcitationState:
    """Edge-localized zero mode with amplitudes proportional to g^(-n).

    Reduces to the uniform W state at |g| = 1.
    """
    if g == 0:
        raise ValueError("boundary state is undefined at g = 0")
    n = np.arange(n_sites)
    return SingleExcitationState(n_sites, (1.0 / g) ** n).normalized()


def aqmbs_state(k: int, phi: float, n_sites: int) -> SingleExcitationState:
    """Single-excitation eigenstate of the reference Hamiltonian at g = e^(i phi).

    Amplitudes: e^(-i n phi) * cos[(N - n - 1/2) k pi / N].

    Note the phase sign: the gauge transform that maps the g = e^(i phi)
    single-excitation block onto the real g = 1 block multiplies site n by
    e^(+i n phi), so its eigenvectors carry e^(-i n phi) — consistent with
    the k = 0 state coinciding with the boundary state (amplitudes
    g^(-n) = e^(-i n phi)). The eigenrelation is enforced by tests.
    """
    if not 0 <= k <= n_sites - 1:
        raise ValueError(f"k must be in 0..{n_sites - 1}")
    n = np.arange(n_sites)
    envelope = np.cos((n_sites - n - 0.5) * k * np.pi / n_sites)
    return SingleExcitationState(n_sites,
                                 np.exp(-1j * phi * n) * envelope).normalized()


def aqmbs_energy(k: int, n_sites: int) -> float:
    """Single-excitation eigenvalue 1 - cos(k pi / N) at |g| = 1."""
    if not 0 <= k <= n_sites - 1:
        raise ValueError(f"k must be in 0..{n_sites - 1}")
    return 1.0 - math.cos(k * math.pi / n_sites)


def imbalance_expectation(g: complex, n_sites: int) -> float:
    """Closed-form left/right occupation imbalance of the boundary state:
    (1 - |1/g|^N) / (1 + |1/g|^N); exactly 0 at |g| = 1."""
    if g == 0:
        raise ValueError("undefined at g = 0")
    if n_sites % 2:
        raise ValueError("imbalance needs an even chain")
    q = abs(1.0 / g)
    if q == 1.0:
        return 0.0
    return (1 - q**n_sites) / (1 + q**n_sites)


def imbalance_operator_check(state: StateVector) -> float:
    """Direct expectation of sum_{i<N/2} n_i - sum_{i>=N/2} n_i."""
    n = state.n_qubits
    if n % 2:
        raise ValueError("imbalance needs an even chain")
    probs = state.probabilities()
    idx = np.arange(2**n)
    total = 0.0
    for site in range(n):
        occ = (idx >> (n - 1 - site)) & 1
        sign = 1.0 if site < n // 2 else -1.0
        total += sign * float(probs @ occ)
    return total


def boundary_entropy(g: complex, n_sites: int) -> float:
    """Half-chain entanglement entropy of the boundary state:
    binary entropy of p = 1 / (1 + |1/g|^N); ln 2 exactly at |g| = 1."""
    if g == 0:
        raise ValueError("undefined at g = 0")
    if n_sites % 2:
        raise ValueError("half-chain split needs an even chain")
    q = abs(1.0 / g)
    if q == 1.0:
        return math.log(2.0)
    p = 1.0 / (1.0 + q**n_sites)
    terms = [x * math.log(x) for x in (p, 1.0 - p) if x > 0.0]
    return -sum(terms)


def half_chain_entropy(state: StateVector) -> float:
    """Brute-force half-chain entropy via partial trace."""
    n = state.n_qubits
    rho = reduced_density_matrix(state, range(0, n // 2))
    return von_neumann_entropy(rho)


def localization_length(g: complex) -> float:
    """Decay length 1 / |ln|g||; diverges at the |g| = 1 critical point."""
    if g == 0:
        raise ValueError("undefined at g = 0")
    mod = abs(g)
    if mod == 1.0:
        return math.inf
    return 1.0 / abs(math.log(mod))


def energy_variance(state: StateVector, h: np.ndarray) -> float:
    """<H^2> - <H>^2 for a Hermitian dense operator."""
    h = np.asarray(h)
    if h.shape != (state.amplitudes.size,) * 2:
        raise ValueError("operator dimension does not match the state")
    hpsi = h @ state.amplitudes
    mean = np.vdot(state.amplitudes, hpsi)
    second = np.vdot(hpsi, hpsi)
    return float(second.real - mean.real**2)


def energy_variance_streaming(state: StateVector, apply_h) -> float:
    """Same as energy_variance but with a matrix-free H application."""
    hpsi = apply_h(state)
    mean = state.overlap(hpsi)
    second = hpsi.overlap(hpsi)
    return float(second.real - mean.real**2)


def excitation_survival(state: StateVector, site: int) -> float:
    """Probability that the state is exactly the single-excitation basis
    state with the excitation at ``site``.

    This is the survival probability of an injected edge excitation.
    Unlike the site occupation <n_site>, it is insensitive to excitation
    pairs created by the non-conserving dynamics, which drive <n_site>
    to its local equilibrium value (about 1/2) even when the injected
    excitation has long left.
    """
    n = state.n_qubits
    if not 0 <= site < n:
        raise IndexError(f"site {site} out of range for N={n}")
    return float(abs(state.amplitudes[1 << (n - 1 - site)]) ** 2)

"""PVBS projectors, local generators, Hamiltonians and Floquet brickwork layers.

Model family: local interactions H_{n,n+1} = P h P with the rank-2 projector
P = |11><11| + |psi(g)><psi(g)|, assembled either into a Hamiltonian (sum of
terms) or into a brickwork Floquet circuit of gates exp(i P h P).

Generator convention: the complex coefficient ``c`` multiplies |psi><11|
(and its conjugate multiplies |11><psi|), so the experiment's even-layer
generator corresponds to c = 1 - 2i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .qops import StateVector, _apply_gate_tensor

DENSE_N_MAX = 14
STREAM_N_MAX = 24


@dataclass(frozen=True)
class GeneratorCoeffs:
    """Hermitian 2x2 block a|psi><psi| + b|11><11| + c|psi><11| + c*|11><psi|."""

    a: float = 0.0
    b: float = 0.0
    c: complex = 0.0

    @classmethod
    def from_pauli(cls, x: float = 0.0, y: float = 0.0, z: float = 0.0) -> "GeneratorCoeffs":
        """Coefficients of the Pauli operators acting in span{|psi>, |11>}.

        sigma_x -> (0, 0, 1), sigma_y -> (0, 0, -i), sigma_z -> (1, -1, 0).
        """
        return cls(a=z, b=-z, c=complex(x, -y))

    def block(self) -> np.ndarray:
        """2x2 matrix in the ordered basis (|psi>, |11>)."""
        return np.array([[self.a, self.c], [np.conj(self.c), self.b]],
                        dtype=np.complex128)


# generators used in the trapped-ion experiment
PAPER_GEN_EVEN = GeneratorCoeffs(0.0, 0.0, 1 - 2j)
PAPER_GEN_ODD = GeneratorCoeffs(0.0, 0.0, (6 - 1j * np.pi) / 2)

# generator families from the level-statistics analysis: with and without
# the exponential mid-spectrum degeneracy at g = 1
SMF_NODEG_EVEN = GeneratorCoeffs.from_pauli(x=1, y=2, z=1)
SMF_NODEG_ODD = GeneratorCoeffs.from_pauli(x=3, y=np.pi / 2)
SMF_DEG_EVEN = GeneratorCoeffs.from_pauli(x=1, y=2)
SMF_DEG_ODD = GeneratorCoeffs.from_pauli(x=3, y=np.pi / 2)

# generators confined to the (sigma_x, sigma_y) plane: 2^(N/2) zero modes at g = 1
ZERO_MODE_EVEN = GeneratorCoeffs.from_pauli(x=1, y=2)
ZERO_MODE_ODD = GeneratorCoeffs.from_pauli(x=2, y=np.pi / 2)

GENERATOR_PRESETS = {
    "paper": (PAPER_GEN_EVEN, PAPER_GEN_ODD),
    "smF-nodeg": (SMF_NODEG_EVEN, SMF_NODEG_ODD),
    "smF-deg": (SMF_DEG_EVEN, SMF_DEG_ODD),
    "zero-modes": (ZERO_MODE_EVEN, ZERO_MODE_ODD),
}


@dataclass(frozen=True)
class ModelParams:
    """Complete parameterisation of the Hamiltonian and Floquet models."""

    g: complex
    n_qubits: int
    gen_even: GeneratorCoeffs = PAPER_GEN_EVEN
    gen_odd: GeneratorCoeffs = PAPER_GEN_ODD
    east_limit: bool = False  # permits g = 0 (quantum East structural limit)

    def __post_init__(self):
        if self.g == 0 and not self.east_limit:
            raise ValueError("g = 0 requires the explicit East-limit flag")
        if not np.isfinite(abs(complex(self.g))):
            raise ValueError("g must be finite")

    @classmethod
    def paper(cls, g: complex, n_qubits: int) -> "ModelParams":
        return cls(g=g, n_qubits=n_qubits)


def psi_g(g: complex) -> np.ndarray:
    """Normalized two-qubit state (g* |01> - |10>) / sqrt(1 + |g|^2)."""
    v = np.zeros(4, dtype=np.complex128)
    v[1] = np.conj(g)
    v[2] = -1.0
    return v / np.sqrt(1 + abs(g) ** 2)


def psi_perp(g: complex) -> np.ndarray:
    """Normalized state (|01> + g |10>) / sqrt(1 + |g|^2), orthogonal to psi_g."""
    v = np.zeros(4, dtype=np.complex128)
    v[1] = 1.0
    v[2] = g
    return v / np.sqrt(1 + abs(g) ** 2)


def projector(g: complex) -> np.ndarray:
    """Rank-2 projector |11><11| + |psi(g)><psi(g)|."""
    psi = psi_g(g)
    p = np.outer(psi, psi.conj())
    p[3, 3] += 1.0
    return p


def _block_embedding(g: complex) -> np.ndarray:
    """4x2 isometry whose columns are |psi(g)> and |11>."""
    v = np.zeros((4, 2), dtype=np.complex128)
    v[:, 0] = psi_g(g)
    v[3, 1] = 1.0
    return v


def local_interaction(g: complex, coeffs: GeneratorCoeffs) -> np.ndarray:
    """Hermitian 4x4 term P h P, supported on span{|psi(g)>, |11>}."""
    v = _block_embedding(g)
    return v @ coeffs.block() @ v.conj().T


def floquet_gate(g: complex, coeffs: GeneratorCoeffs) -> np.ndarray:
    """Unitary exp(i P h P): identity on span{|00>, |psi_perp>}."""
    v = _block_embedding(g)
    u2 = scipy.linalg.expm(1j * coeffs.block())
    return np.eye(4, dtype=np.complex128) + v @ (u2 - np.eye(2)) @ v.conj().T


def floquet_gates(params: ModelParams):
    """Even- and odd-layer two-qubit gates."""
    return (floquet_gate(params.g, params.gen_even),
            floquet_gate(params.g, params.gen_odd))


def _bond_coeffs(params: ModelParams, n: int) -> GeneratorCoeffs:
    return params.gen_even if n % 2 == 0 else params.gen_odd


def _dense_sum(params: ModelParams, term) -> np.ndarray:
    n = params.n_qubits
    if n > DENSE_N_MAX:
        raise ValueError(f"N = {n} too large for dense construction (max {DENSE_N_MAX})")
    eye = np.eye(2**n, dtype=np.complex128)
    out = np.zeros((2**n, 2**n), dtype=np.complex128)
    for bond in range(n - 1):
        out += _apply_gate_tensor(eye, term(bond), bond, bond + 1, n)
    return out


def hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense deformed Hamiltonian sum_n P h_n P with alternating generators."""
    return _dense_sum(params, lambda n: local_interaction(params.g, _bond_coeffs(params, n)))


def reference_hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense PVBS reference Hamiltonian, the sum of the bond projectors."""
    p4 = projector(params.g)
    return _dense_sum(params, lambda n: p4)


def apply_hamiltonian(state: StateVector, params: ModelParams) -> StateVector:
    """H |state> without building the dense matrix (streaming bond terms)."""
    n = state.n_qubits
    acc = np.zeros_like(state.amplitudes)
    for bond in range(n - 1):
        h4 = local_interaction(params.g, _bond_coeffs(params, bond))
        acc += _apply_gate_tensor(state.amplitudes, h4, bond, bond + 1, n)
    return StateVector(n, acc)


def apply_reference_hamiltonian(state: StateVector, params: ModelParams) -> StateVector:
    n = state.n_qubits
    p4 = projector(params.g)
    acc = np.zeros_like(state.amplitudes)
    for bond in range(n - 1):
        acc += _apply_gate_tensor(state.amplitudes, p4, bond, bond + 1, n)
    return StateVector(n, acc)


def apply_floquet_step(state: StateVector, params: ModelParams) -> StateVector:
    """One brickwork period: even layer on (0,1),(2,3),... then odd layer
    on (1,2),(3,4),...; sites 0 and N-1 idle in the odd layer."""
    n = state.n_qubits
    if n % 2:
        raise ValueError("brickwork circuit requires even N")
    if n > STREAM_N_MAX:
        raise ValueError(f"N = {n} exceeds the statevector cap ({STREAM_N_MAX})")
    u_e, u_o = floquet_gates(params)
    amps = state.amplitudes
    for q in range(0, n - 1, 2):
        amps = _apply_gate_tensor(amps, u_e, q, q + 1, n)
    for q in range(1, n - 2, 2):
        amps = _apply_gate_tensor(amps, u_o, q, q + 1, n)
    return StateVector(n, amps)


def floquet_unitary(params: ModelParams, dense_n_max: int = 12) -> np.ndarray:
    """Dense Floquet unitary, built by streaming the gates through all
    basis columns at once."""
    n = params.n_qubits
    if n % 2:
        raise ValueError("brickwork circuit requires even N")
    if n > dense_n_max:
        raise ValueError(f"N = {n} too large for a dense Floquet unitary")
    u_e, u_o = floquet_gates(params)
    mat = np.eye(2**n, dtype=np.complex128)
    for q in range(0, n - 1, 2):
        mat = _apply_gate_tensor(mat, u_e, q, q + 1, n)
    for q in range(1, n - 2, 2):
        mat = _apply_gate_tensor(mat, u_o, q, q + 1, n)
    return mat

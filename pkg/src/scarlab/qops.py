"""Dense statevector engine: gate application, partial traces, entropies,
and residual-checked eigendecompositions.

Bit-ordering convention used throughout the package: qubit 0 is the most
significant bit of the basis index, so the bitstring of a basis index read
left to right gives the chain sites 0..N-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .tolerances import (
    EIG_RESIDUAL_TOL,
    HERMITICITY_TOL,
    NORM_TOL,
    UNITARITY_TOL,
)


@dataclass
class StateVector:
    """Full complex amplitude vector over ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise ValueError(
                f"amplitude vector has length {self.amplitudes.size}, "
                f"expected {2**self.n_qubits}"
            )

    @classmethod
    def computational_basis(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_bits(cls, bits) -> "StateVector":
        """Basis state from an iterable of bits, site 0 first."""
        bits = list(bits)
        index = 0
        for b in bits:
            index = (index << 1) | int(b)
        return cls.computational_basis(len(bits), index)

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return float(abs(self.overlap(other)) ** 2)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def check_unitary(matrix: np.ndarray, tol: float = UNITARITY_TOL) -> None:
    matrix = np.asarray(matrix)
    dim = matrix.shape[0]
    defect = np.max(np.abs(matrix.conj().T @ matrix - np.eye(dim)))
    if defect > tol:
        raise ValueError(f"matrix is not unitary: |M^dag M - I| = {defect:.3e}")


def check_hermitian(matrix: np.ndarray, tol: float = HERMITICITY_TOL) -> None:
    matrix = np.asarray(matrix)
    defect = np.max(np.abs(matrix - matrix.conj().T))
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: |M - M^dag| = {defect:.3e}")


def _apply_gate_tensor(amps: np.ndarray, gate: np.ndarray, q1: int, q2: int,
                       n_qubits: int) -> np.ndarray:
    """Apply a 4x4 gate on qubits (q1, q2) of an amplitude array.

    ``amps`` may carry one trailing batch axis (used when streaming gates
    through the columns of a dense operator).
    """
    batch = amps.shape[1:] if amps.ndim > 1 else ()
    tens = amps.reshape((2,) * n_qubits + batch)
    tens = np.moveaxis(tens, (q1, q2), (0, 1))
    rest = tens.shape[2:]
    out = gate @ tens.reshape(4, -1)
    tens = np.moveaxis(out.reshape((2, 2) + rest), (0, 1), (q1, q2))
    return np.ascontiguousarray(tens).reshape((2**n_qubits,) + batch)


def apply_two_qubit(state: StateVector, gate: np.ndarray, q1: int, q2: int,
                    validate: bool = True) -> StateVector:
    """Apply a two-qubit unitary to the ordered pair (q1, q2).

    The gate is given in the basis |q1 q2> in {|00>, |01>, |10>, |11>}.
    Arbitrary (non-adjacent) pairs are supported.
    """
    n = state.n_qubits
    if not (0 <= q1 < n and 0 <= q2 < n):
        raise IndexError(f"qubit index out of range for N={n}: ({q1}, {q2})")
    if q1 == q2:
        raise ValueError("q1 and q2 must be distinct")
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (4, 4):
        raise ValueError("gate must be 4x4")
    if validate:
        check_unitary(gate)
    return StateVector(n, _apply_gate_tensor(state.amplitudes, gate, q1, q2, n))


def apply_single_qubit(state: StateVector, gate: np.ndarray, q: int) -> StateVector:
    n = state.n_qubits
    if not 0 <= q < n:
        raise IndexError(f"qubit index out of range for N={n}: {q}")
    tens = state.amplitudes.reshape((2,) * n)
    tens = np.moveaxis(tens, q, 0)
    out = np.asarray(gate, dtype=np.complex128) @ tens.reshape(2, -1)
    tens = np.moveaxis(out.reshape(tens.shape), 0, q)
    return StateVector(n, np.ascontiguousarray(tens).reshape(2**n))


def reduced_density_matrix(state: StateVector, keep: range) -> np.ndarray:
    """Trace out everything outside the contiguous site range ``keep``."""
    n = state.n_qubits
    sites = list(keep)
    if not sites:
        raise ValueError("keep must be nonempty")
    if sites != list(range(sites[0], sites[-1] + 1)):
        raise ValueError("keep must be a contiguous site range")
    if sites[0] < 0 or sites[-1] >= n:
        raise IndexError(f"keep range {sites[0]}..{sites[-1]} out of bounds for N={n}")
    if len(sites) > 14:
        raise ValueError("keep range too large for a dense reduced density matrix")
    k = len(sites)
    left, right = sites[0], n - 1 - sites[-1]
    # (left sites) x (kept sites) x (right sites); trace over left and right
    a = state.amplitudes.reshape(2**left, 2**k, 2**right)
    a = np.moveaxis(a, 1, 0).reshape(2**k, -1)
    return a @ a.conj().T


def von_neumann_entropy(rho: np.ndarray, eig_floor: float = 1e-14) -> float:
    """Entropy -Tr(rho log rho) in natural-log units."""
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-12:
        raise ValueError(f"density matrix not PSD: min eigenvalue {evals.min():.3e}")
    evals = evals[evals > eig_floor]
    return float(-np.sum(evals * np.log(evals)))


def eig_hermitian(op: np.ndarray, check_residual: bool = True):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    op = np.asarray(op, dtype=np.complex128)
    check_hermitian(op)
    evals, evecs = np.linalg.eigh(op)
    if check_residual:
        resid = np.linalg.norm(op @ evecs - evecs * evals, axis=0)
        worst = float(resid.max())
        if worst > EIG_RESIDUAL_TOL:
            raise RuntimeError(f"eigendecomposition residual {worst:.3e}")
    return evals, evecs


def eig_unitary(op: np.ndarray, check_residual: bool = True):
    """Eigenphases in (-pi, pi] (ascending) and orthonormal eigenvectors.

    Uses a complex Schur decomposition; for a unitary input the Schur form
    is diagonal, so the Schur vectors are orthonormal eigenvectors even in
    degenerate phase clusters.
    """
    op = np.asarray(op, dtype=np.complex128)
    check_unitary(op)
    t, z = scipy.linalg.schur(op, output="complex")
    lam = np.diag(t)
    phases = np.angle(lam)
    # map the branch cut so phases live in (-pi, pi]
    phases = np.where(phases <= -np.pi + 1e-300, np.pi, phases)
    order = np.argsort(phases, kind="stable")
    phases, lam, vecs = phases[order], lam[order], z[:, order]
    if check_residual:
        resid = np.max(np.abs(np.exp(1j * phases) - lam))
        vec_resid = np.linalg.norm(op @ vecs - vecs * lam, axis=0).max()
        if max(resid, float(vec_resid)) > EIG_RESIDUAL_TOL:
            raise RuntimeError(
                f"unitary eigendecomposition residual {max(resid, vec_resid):.3e}"
            )
    return phases, vecs


def assert_normalized(state: StateVector, tol: float = NORM_TOL) -> None:
    drift = abs(state.norm() ** 2 - 1.0)
    if drift > tol:
        raise ValueError(f"state norm drift {drift:.3e} exceeds {tol:.0e}")


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))

"""Native gate set of the trapped-ion target and the circuit container.

Native gates: U1q(theta, phi), Rz(lambda), the entangling ZZ(eta), plus X
and Z. The abstract two-qubit excitation splitter ("sp") used by the
state-preparation synthesizer is also representable; lower_to_native()
rewrites it into the native set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..qops import StateVector, apply_two_qubit, apply_single_qubit

TWO_QUBIT_KINDS = {"ZZ", "sp"}
ONE_QUBIT_KINDS = {"U1q", "Rz", "X", "Z"}

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def u1q_matrix(theta: float, phi: float) -> np.ndarray:
    """exp[-i theta/2 (cos(phi) X + sin(phi) Y)]."""
    axis = math.cos(phi) * _X + math.sin(phi) * _Y
    return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * axis


def rz_matrix(lam: float) -> np.ndarray:
    """exp[-i lambda/2 Z]."""
    return np.diag([np.exp(-0.5j * lam), np.exp(0.5j * lam)])


def zz_matrix(eta: float) -> np.ndarray:
    """exp[-i eta/2 Z (x) Z]."""
    return np.diag(np.exp(-0.5j * eta * np.array([1, -1, -1, 1])))


def splitter_matrix(gamma: float) -> np.ndarray:
    """Excitation-preserving rotation in the {|01>, |10>} block:
    |01> -> cos|01> + sin|10>, |10> -> -sin|01> + cos|10>."""
    m = np.eye(4, dtype=np.complex128)
    c, s = math.cos(gamma), math.sin(gamma)
    m[1, 1] = c
    m[1, 2] = -s
    m[2, 1] = s
    m[2, 2] = c
    return m


@dataclass(frozen=True)
class NativeGate:
    kind: str
    qubits: tuple[int, ...]
    angles: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind in TWO_QUBIT_KINDS:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{self.kind} needs two distinct qubits")
        elif self.kind in ONE_QUBIT_KINDS:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} acts on one qubit")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if not all(math.isfinite(a) for a in self.angles):
            raise ValueError("gate angles must be finite")

    def matrix(self) -> np.ndarray:
        if self.kind == "U1q":
            return u1q_matrix(*self.angles)
        if self.kind == "Rz":
            return rz_matrix(*self.angles)
        if self.kind == "ZZ":
            return zz_matrix(*self.angles)
        if self.kind == "sp":
            return splitter_matrix(*self.angles)
        if self.kind == "X":
            return _X.copy()
        return _Z.copy()


def zz(q1: int, q2: int, eta: float) -> NativeGate:
    return NativeGate("ZZ", (q1, q2), (eta,))


def u1q(q: int, theta: float, phi: float) -> NativeGate:
    return NativeGate("U1q", (q,), (theta, phi))


def rz(q: int, lam: float) -> NativeGate:
    return NativeGate("Rz", (q,), (lam,))


def splitter(q1: int, q2: int, gamma: float) -> NativeGate:
    return NativeGate("sp", (q1, q2), (gamma,))


@dataclass
class Circuit:
    n_qubits: int
    gates: list[NativeGate] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: NativeGate) -> None:
        if any(q < 0 or q >= self.n_qubits for q in gate.qubits):
            raise ValueError(f"gate {gate} out of range for n_qubits={self.n_qubits}")

    def append(self, gate: NativeGate) -> None:
        self._check(gate)
        self.gates.append(gate)

    @property
    def entangling_count(self) -> int:
        return sum(1 for g in self.gates if g.kind in TWO_QUBIT_KINDS)

    @property
    def entangling_depth(self) -> int:
        """Number of layers of the two-qubit gates (greedy packing in
        program order; single-qubit gates are free)."""
        layer_of_qubit = [0] * self.n_qubits
        depth = 0
        for gate in self.gates:
            if gate.kind not in TWO_QUBIT_KINDS:
                continue
            q1, q2 = gate.qubits
            layer = max(layer_of_qubit[q1], layer_of_qubit[q2]) + 1
            layer_of_qubit[q1] = layer_of_qubit[q2] = layer
            depth = max(depth, layer)
        return depth

    def apply(self, state: StateVector) -> StateVector:
        for gate in self.gates:
            if gate.kind in TWO_QUBIT_KINDS:
                state = apply_two_qubit(state, gate.matrix(), *gate.qubits,
                                        validate=False)
            else:
                state = apply_single_qubit(state, gate.matrix(), gate.qubits[0])
        return state

    def unitary(self) -> np.ndarray:
        """Dense matrix of the whole circuit (small n_qubits only)."""
        dim = 2**self.n_qubits
        cols = []
        for basis in range(dim):
            out = self.apply(StateVector.computational_basis(self.n_qubits, basis))
            cols.append(out.amplitudes)
        return np.column_stack(cols)


def phase_insensitive_distance(u: np.ndarray, v: np.ndarray) -> float:
    """d(U, V) = 1 - |Tr(V^dag U)| / dim."""
    dim = u.shape[0]
    return 1.0 - abs(np.trace(v.conj().T @ u)) / dim

"""Two-qubit unitary decomposition into the native gate set.

Any U in U(4) factors as

    U = e^{i k0} (A1 x A2) exp[i (kx XX + ky YY + kz ZZ)] (B1 x B2)

with the interaction coefficients reducible to [-pi/4, pi/4]. Each
nonvanishing axis costs one ZZ entangler (conjugated into the right basis
by Hadamard-like single-qubit gates), so a generic unitary compiles to at
most three ZZ gates. Gates that act as the identity on a two-dimensional
subspace, like the brickwork gates built from traceless off-diagonal
generators, have a vanishing axis and compile to at most two.

The factorization is extracted in the magic (Bell) basis, where the local
subgroup SU(2) x SU(2) becomes SO(4) and the interaction part becomes
diagonal.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..tolerances import RECONSTRUCTION_TOL
from .gates import Circuit, NativeGate, rz, u1q, u1q_matrix, rz_matrix, zz

_SQ2 = math.sqrt(2.0)
MAGIC = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=np.complex128,
) / _SQ2

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQ2
_S = np.diag([1.0, 1j]).astype(np.complex128)
_SH = _S @ _H

# diagonals of I, XX, YY, ZZ in the magic basis (all real)
_AXIS_DIAGS = np.column_stack(
    [
        np.real(np.diag(MAGIC.conj().T @ np.kron(p, p) @ MAGIC))
        for p in (np.eye(2), _X, _Y, _Z)
    ]
)

AXIS_DROP_TOL = 1e-10


def _orthogonal_diagonalize(mm: np.ndarray, rng: np.random.Generator):
    """Real orthogonal P with P^T (mm) P diagonal, for unitary symmetric mm.

    Re(mm) and Im(mm) commute, so a random real combination has the common
    eigenbasis; degenerate draws are retried.
    """
    re, im = mm.real, mm.imag
    for _ in range(32):
        t = rng.normal()
        _, p = np.linalg.eigh(re + t * im)
        d = p.T @ mm @ p
        if np.max(np.abs(d - np.diag(np.diag(d)))) < 1e-11:
            return p, np.diag(d).copy()
    raise RuntimeError("failed to diagonalize the magic-basis Gram matrix")


def _factor_local(gate: np.ndarray):
    """Split a tensor-product unitary into its 2x2 factors (a x b)."""
    g = gate.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    u, s, vh = np.linalg.svd(g)
    if s[1] > 1e-9:
        raise RuntimeError(f"matrix is not a tensor product (s1 = {s[1]:.3e})")
    a = u[:, 0].reshape(2, 2) * math.sqrt(s[0])
    b = vh[0].reshape(2, 2) * math.sqrt(s[0])
    return a, b


def interaction_coefficients(u: np.ndarray, seed: int = 7):
    """Raw KAK data (k0, (kx, ky, kz), left locals, right locals) of a 4x4
    unitary, before reduction of the axes to [-pi/4, pi/4]."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (4, 4):
        raise ValueError("expected a 4x4 unitary")
    det = np.linalg.det(u)
    alpha = cmath.phase(det) / 4.0
    su = u * cmath.exp(-1j * alpha)

    m = MAGIC.conj().T @ su @ MAGIC
    mm = m.T @ m
    rng = np.random.default_rng(seed)
    p, d = _orthogonal_diagonalize(mm, rng)
    if np.linalg.det(p) < 0:
        p[:, 0] = -p[:, 0]
        d = np.diag(p.T @ mm @ p).copy()

    theta = np.angle(d) / 2.0
    f_inv = np.exp(-1j * theta)
    left = m @ p @ np.diag(f_inv)
    if np.linalg.det(left).real < 0:
        theta[0] += np.pi
        left[:, 0] = -left[:, 0]
    if np.max(np.abs(left.imag)) > 1e-9:
        raise RuntimeError("left magic-basis factor is not real orthogonal")

    ks = np.linalg.solve(_AXIS_DIAGS, theta)
    k0 = float(ks[0]) + alpha
    a1, a2 = _factor_local(MAGIC @ left.real @ MAGIC.conj().T)
    b1, b2 = _factor_local(MAGIC @ p.T @ MAGIC.conj().T)
    return k0, (float(ks[1]), float(ks[2]), float(ks[3])), (a1, a2), (b1, b2)


def _zyz(u: np.ndarray):
    """u = e^{i delta} Rz(alpha) Ry(beta) Rz(gamma); returns the angles."""
    delta = cmath.phase(np.linalg.det(u)) / 2.0
    v = u * cmath.exp(-1j * delta)
    c = abs(v[0, 0])
    s = abs(v[1, 0])
    beta = 2.0 * math.atan2(s, c)
    if s < 1e-12:
        alpha = 2.0 * cmath.phase(v[1, 1])
        gamma = 0.0
    elif c < 1e-12:
        alpha = 2.0 * cmath.phase(v[1, 0])
        gamma = 0.0
    else:
        alpha = cmath.phase(v[1, 1]) + cmath.phase(v[1, 0])
        gamma = cmath.phase(v[1, 1]) - cmath.phase(v[1, 0])
    recon = (cmath.exp(1j * delta) * rz_matrix(alpha)
             @ u1q_matrix(beta, np.pi / 2) @ rz_matrix(gamma))
    if np.max(np.abs(recon - u)) > 1e-10:
        raise RuntimeError("single-qubit angle extraction failed")
    return delta, alpha, beta, gamma


def _emit_single(circ: Circuit, q: int, u: np.ndarray) -> complex:
    """Append native gates implementing ``u`` on qubit q, returning the
    global phase factored out."""
    if np.max(np.abs(u - u[0, 0] * np.eye(2))) < 1e-13:
        return complex(u[0, 0])
    delta, alpha, beta, gamma = _zyz(u)
    if abs(beta) < 1e-12:
        circ.append(rz(q, alpha + gamma))
    else:
        if abs(gamma) > 1e-12:
            circ.append(rz(q, gamma))
        circ.append(u1q(q, beta, np.pi / 2))
        if abs(alpha) > 1e-12:
            circ.append(rz(q, alpha))
    return cmath.exp(1j * delta)


# per-axis data: the Pauli absorbed by a pi/2 shift and the basis-change
# single-qubit gate that maps the axis onto ZZ
_AXES = (
    (_X, _H),
    (_Y, _SH),
    (_Z, None),
)


def decompose_general(u: np.ndarray, q1: int = 0, q2: int = 1,
                      n_qubits: int = 2, seed: int = 7):
    """Compile a two-qubit unitary into native gates on (q1, q2).

    Returns (circuit, global_phase) with
    global_phase * circuit.unitary() == u (for the default wires) to the
    reconstruction tolerance. Uses at most three ZZ entanglers.
    """
    k0, raw_ks, (a1, a2), (b1, b2) = interaction_coefficients(u, seed=seed)

    phase = cmath.exp(1j * k0)
    pending = [b1.copy(), b2.copy()]
    circ = Circuit(n_qubits)

    axis_ops = []  # (reduced k, basis gate) for nonvanishing axes
    for k, (pauli, basis) in zip(raw_ks, _AXES):
        shifts = round(k / (np.pi / 2))
        k -= shifts * (np.pi / 2)
        if shifts % 4:
            phase *= 1j ** (shifts % 4)
            pw = np.linalg.matrix_power(pauli, shifts % 4)
            pending[0] = pw @ pending[0]
            pending[1] = pw @ pending[1]
        if abs(k) > AXIS_DROP_TOL:
            axis_ops.append((k, basis))

    qubits = (q1, q2)
    for k, basis in axis_ops:
        if basis is not None:
            pending[0] = basis.conj().T @ pending[0]
            pending[1] = basis.conj().T @ pending[1]
        for i in (0, 1):
            phase *= _emit_single(circ, qubits[i], pending[i])
        circ.append(zz(q1, q2, -2.0 * k))
        pending = [np.eye(2, dtype=np.complex128)] * 2
        if basis is not None:
            pending = [basis.copy(), basis.copy()]

    pending[0] = a1 @ pending[0]
    pending[1] = a2 @ pending[1]
    for i in (0, 1):
        phase *= _emit_single(circ, qubits[i], pending[i])

    if n_qubits == 2 and (q1, q2) == (0, 1):
        err = np.max(np.abs(phase * circ.unitary() - u))
        if err > RECONSTRUCTION_TOL:
            raise RuntimeError(f"reconstruction error {err:.3e}")
    return circ, phase


def decompose_restricted(g: complex, coeffs, q1: int = 0, q2: int = 1,
                         n_qubits: int = 2, seed: int = 7):
    """Compile the brickwork gate of a purely off-diagonal generator
    (a = b = 0) into at most two ZZ entanglers.

    Such gates act as the identity on a two-dimensional subspace, which
    forces one interaction axis to vanish.
    """
    from .. import pvbs

    if coeffs.a != 0 or coeffs.b != 0:
        raise ValueError("restricted decomposition needs a = b = 0")
    u = pvbs.floquet_gate(g, coeffs)
    circ, phase = decompose_general(u, q1, q2, n_qubits, seed=seed)
    if circ.entangling_count > 2:
        raise RuntimeError(
            f"expected at most 2 entanglers, got {circ.entangling_count}"
        )
    return circ, phase

import math

import numpy as np
import pytest

from scarlab import pvbs, scars
from scarlab.nativec import (
    Circuit,
    NativeGate,
    decompose_general,
    decompose_restricted,
    phase_insensitive_distance,
)
from scarlab.nativec.fixtures import (
    RECONSTRUCTED_ANGLE,
    TABLE_DISTANCE_TOL,
    TABLE_G_VALUES,
    reconstruct_missing_angle,
    table1_fixture,
    template_circuit,
    template_unitary,
    validate_table,
)
from scarlab.nativec.gates import rz_matrix, splitter, u1q_matrix, zz_matrix
from scarlab.nativec.stateprep import (
    SM_FIXTURE_SIZES,
    lower_to_native,
    prep_tree,
    sm_fixture_fidelity,
    sm_prep_fixture,
    synthesize_state_prep,
)
from scarlab.qops import haar_unitary


# -- native gate matrices ------------------------------------------------------

def test_u1q_special_cases():
    # U1q(theta, 0) = Rx(theta), U1q(theta, pi/2) = Ry(theta)
    t = 0.7
    rx = np.array([[math.cos(t / 2), -1j * math.sin(t / 2)],
                   [-1j * math.sin(t / 2), math.cos(t / 2)]])
    assert np.allclose(u1q_matrix(t, 0.0), rx)
    ry = np.array([[math.cos(t / 2), -math.sin(t / 2)],
                   [math.sin(t / 2), math.cos(t / 2)]])
    assert np.allclose(u1q_matrix(t, math.pi / 2), ry)


def test_zz_diagonal():
    eta = 1.1
    m = zz_matrix(eta)
    assert np.allclose(np.diag(m),
                       np.exp(-0.5j * eta * np.array([1, -1, -1, 1])))


def test_circuit_unitary_composition():
    circ = Circuit(2)
    circ.append(NativeGate("U1q", (0,), (0.3, 1.2)))
    circ.append(NativeGate("ZZ", (0, 1), (0.8,)))
    circ.append(NativeGate("Rz", (1,), (0.5,)))
    ref = (np.kron(np.eye(2), rz_matrix(0.5))
           @ zz_matrix(0.8)
           @ np.kron(u1q_matrix(0.3, 1.2), np.eye(2)))
    assert np.linalg.norm(circ.unitary() - ref) < 1e-13


def test_entangling_count_and_depth():
    circ = Circuit(4)
    circ.append(splitter(0, 1, 0.3))
    circ.append(splitter(2, 3, 0.4))   # parallel with the first
    circ.append(splitter(1, 2, 0.5))   # must wait
    assert circ.entangling_count == 3
    assert circ.entangling_depth == 2


def test_gate_validation():
    with pytest.raises(ValueError):
        NativeGate("ZZ", (0, 0), (1.0,))
    with pytest.raises(ValueError):
        NativeGate("U1q", (0, 1), (1.0, 2.0))
    with pytest.raises(ValueError):
        NativeGate("bogus", (0,))
    with pytest.raises(ValueError):
        NativeGate("Rz", (0,), (float("nan"),))
    with pytest.raises(ValueError):
        Circuit(2).append(NativeGate("X", (5,)))


# -- two-qubit decomposition ---------------------------------------------------

def _reconstruction_error(u, circuit, phase):
    return np.linalg.norm(phase * circuit.unitary() - u)


def test_decompose_haar_unitaries():
    rng = np.random.default_rng(123)
    worst = 0.0
    for _ in range(50):
        u = haar_unitary(4, rng)
        circuit, phase = decompose_general(u)
        assert circuit.entangling_count <= 3
        assert all(g.kind in ("U1q", "Rz", "ZZ") for g in circuit.gates)
        worst = max(worst, _reconstruction_error(u, circuit, phase))
    assert worst < 1e-9


def test_decompose_clifford_entangler_counts():
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                    dtype=complex)
    cz = np.diag([1, 1, 1, -1]).astype(complex)
    for u, expected in ((cnot, 1), (cz, 1), (np.eye(4, dtype=complex), 0)):
        circuit, phase = decompose_general(u)
        assert circuit.entangling_count == expected
        assert _reconstruction_error(u, circuit, phase) < 1e-10


def test_decompose_local_product():
    rng = np.random.default_rng(5)
    u = np.kron(haar_unitary(2, rng), haar_unitary(2, rng))
    circuit, phase = decompose_general(u)
    assert circuit.entangling_count == 0
    assert _reconstruction_error(u, circuit, phase) < 1e-10


def test_decompose_restricted_two_entanglers():
    rng = np.random.default_rng(9)
    for g in (0.5, 1.0, 2.0):
        for _ in range(10):
            coeffs = pvbs.GeneratorCoeffs(
                c=complex(rng.normal(), rng.normal()))
            circuit, phase = decompose_restricted(g, coeffs)
            assert circuit.entangling_count <= 2
            target = pvbs.floquet_gate(g, coeffs)
            assert phase_insensitive_distance(
                phase * circuit.unitary(), target) < 1e-9


def test_decompose_restricted_rejects_diagonal_terms():
    with pytest.raises(ValueError):
        decompose_restricted(1.0, pvbs.GeneratorCoeffs(a=1.0, c=1.0))


def test_decompose_embeds_on_larger_register():
    rng = np.random.default_rng(77)
    u = haar_unitary(4, rng)
    circuit, phase = decompose_general(u, q1=1, q2=3, n_qubits=4)
    assert circuit.n_qubits == 4
    assert {q for g in circuit.gates for q in g.qubits} <= {1, 3}


# -- published gate-parameter fixtures ------------------------------------------

def test_table_reproduces_both_layers_for_all_g():
    for g in TABLE_G_VALUES:
        distances = validate_table(g)
        assert set(distances) == {"even", "odd"}
        for which, d in distances.items():
            assert d < TABLE_DISTANCE_TOL, (g, which, d)


def test_template_circuit_matches_template_unitary():
    params = table1_fixture(1.0)["even"]
    circ = template_circuit(params)
    d = phase_insensitive_distance(circ.unitary(), template_unitary(params))
    assert d < 1e-12


def test_reconstructed_angle_regression():
    angle = reconstruct_missing_angle()
    assert abs(angle - RECONSTRUCTED_ANGLE) < 2e-4


def test_table_unknown_g_rejected():
    with pytest.raises(ValueError):
        table1_fixture(0.9)


# -- state preparation -----------------------------------------------------------

def test_prep_tree_shape():
    tree = prep_tree(8)
    assert len(tree) == 7
    assert max(level for level, _, _ in tree) == 2  # ceil(log2 8) - 1


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 13, 16, 18])
def test_synthesized_prep_exact(n):
    target = scars.aqmbs_state(1, 0.0, n)
    circ = synthesize_state_prep(target)
    out = circ.apply(scars.product_vacuum(n))
    assert target.embed().fidelity(out) > 1 - 1e-10
    assert circ.entangling_count <= n - 1
    assert circ.entangling_depth <= math.ceil(math.log2(n))


def test_synthesized_prep_complex_phases():
    target = scars.aqmbs_state(2, 1.1, 12)
    circ = synthesize_state_prep(target)
    out = circ.apply(scars.product_vacuum(12))
    assert target.embed().fidelity(out) > 1 - 1e-10


@pytest.mark.parametrize("n", SM_FIXTURE_SIZES)
def test_sm_fixture_resolved_convention(n):
    assert sm_fixture_fidelity(n) > 0.999


@pytest.mark.parametrize("n", SM_FIXTURE_SIZES)
def test_sm_fixture_literal_convention_fails(n):
    # documents the convention conflict: the printed numbers read literally
    # on the printed matrix do not prepare the target state
    assert sm_fixture_fidelity(n, literal=True) < 0.5


def test_lower_to_native_preserves_action():
    n = 8
    circ = synthesize_state_prep(scars.aqmbs_state(1, 0.0, n))
    native = lower_to_native(circ)
    assert all(g.kind != "sp" for g in native.gates)
    assert native.entangling_count == 2 * circ.entangling_count
    a = circ.apply(scars.product_vacuum(n))
    b = native.apply(scars.product_vacuum(n))
    assert a.fidelity(b) > 1 - 1e-10


def test_fixture_size_validation():
    with pytest.raises(ValueError):
        sm_prep_fixture(10)

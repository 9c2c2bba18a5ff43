import math

import numpy as np
import pytest

from scarlab import pvbs, scars


def test_boundary_state_annihilated_by_hamiltonian():
    rng = np.random.default_rng(7)
    for g in (0.5, 1.0, 2.0, 0.6 + 0.8j):
        for n in (4, 6, 8):
            gens = tuple(pvbs.GeneratorCoeffs(rng.normal(), rng.normal(),
                                              complex(rng.normal(), rng.normal()))
                         for _ in range(2))
            params = pvbs.ModelParams(g=g, n_qubits=n,
                                      gen_even=gens[0], gen_odd=gens[1])
            state = scars.boundary_state(g, n).embed()
            assert pvbs.apply_hamiltonian(state, params).norm() < 1e-12
            assert pvbs.apply_hamiltonian(scars.product_vacuum(n), params).norm() < 1e-12


def test_boundary_state_floquet_fixed_point():
    for g in (0.5, 2.0):
        params = pvbs.ModelParams(g=g, n_qubits=8)
        state = scars.boundary_state(g, 8).embed()
        out = pvbs.apply_floquet_step(state, params)
        assert np.linalg.norm(out.amplitudes - state.amplitudes) < 1e-10


def test_boundary_state_is_w_state_at_unit_modulus():
    st = scars.boundary_state(1.0, 5)
    assert np.allclose(st.amplitudes, np.full(5, 1 / math.sqrt(5)))


def test_aqmbs_eigenrelation():
    # reference Hamiltonian at g = e^{i phi}; eigenvalue 1 - cos(k pi / N)
    for phi in (0.0, math.pi / 3):
        g = complex(math.cos(phi), math.sin(phi))
        for k in (0, 1, 2, 3):
            n = 10
            params = pvbs.ModelParams(g=g, n_qubits=n)
            state = scars.aqmbs_state(k, phi, n).embed()
            hpsi = pvbs.apply_reference_hamiltonian(state, params)
            eps = scars.aqmbs_energy(k, n)
            resid = np.linalg.norm(hpsi.amplitudes - eps * state.amplitudes)
            assert resid < 1e-12, (phi, k, resid)


def test_aqmbs_k0_equals_boundary_state():
    phi = 0.7
    g = complex(math.cos(phi), math.sin(phi))
    a0 = scars.aqmbs_state(0, phi, 9)
    b = scars.boundary_state(g, 9)
    assert abs(abs(a0.overlap(b)) - 1.0) < 1e-12


def test_embed_convention():
    st = scars.SingleExcitationState(4, [1, 0, 0, 0]).embed()
    # excitation at site 0 lives on the most significant bit
    assert st.amplitudes[8] == 1.0


def test_imbalance_closed_form_matches_operator():
    for g in (0.5, 2.0 / 3.0, 1.0, 2.0, 3.0):
        for n in (4, 6, 8):
            state = scars.boundary_state(g, n).embed()
            direct = scars.imbalance_operator_check(state)
            assert abs(direct - scars.imbalance_expectation(g, n)) < 1e-12


def test_imbalance_known_value():
    # (1 - (1/2)^4) / (1 + (1/2)^4) = 15/17
    assert abs(scars.imbalance_expectation(2.0, 4) - 15.0 / 17.0) < 1e-15


def test_entropy_closed_form_matches_partial_trace():
    for g in (0.5, 1.0, 1.5, 2.0):
        for n in (4, 6, 8):
            state = scars.boundary_state(g, n).embed()
            assert abs(scars.half_chain_entropy(state)
                       - scars.boundary_entropy(g, n)) < 1e-12


def test_entropy_ln2_at_unit_modulus():
    assert scars.boundary_entropy(1.0, 8) == math.log(2.0)
    assert scars.boundary_entropy(-1.0, 6) == math.log(2.0)


def test_localization_length():
    assert math.isinf(scars.localization_length(1.0))
    assert abs(scars.localization_length(2.0) - 1 / math.log(2)) < 1e-15
    assert abs(scars.localization_length(0.5) - 1 / math.log(2)) < 1e-15
    with pytest.raises(ValueError):
        scars.localization_length(0.0)


def test_localization_log_fit_slope():
    # log |amplitude| decays linearly with slope -1/xi = -ln|g|
    g, n = 2.0, 24
    amps = np.abs(scars.boundary_state(g, n).amplitudes)
    slope = np.polyfit(np.arange(n), np.log(amps), 1)[0]
    assert abs(slope / math.log(g) + 1.0) < 0.05


def test_energy_variance_zero_for_eigenstate():
    params = pvbs.ModelParams(g=1.0, n_qubits=6)
    h = pvbs.reference_hamiltonian(params)
    state = scars.aqmbs_state(1, 0.0, 6).embed()
    assert abs(scars.energy_variance(state, h)) < 1e-12
    streaming = scars.energy_variance_streaming(
        state, lambda s: pvbs.apply_reference_hamiltonian(s, params))
    assert abs(streaming) < 1e-12


def test_energy_variance_positive_for_superposition():
    params = pvbs.ModelParams(g=1.0, n_qubits=6)
    h = pvbs.reference_hamiltonian(params)
    a = scars.aqmbs_state(1, 0.0, 6).amplitudes
    b = scars.aqmbs_state(2, 0.0, 6).amplitudes
    mix = scars.SingleExcitationState(6, (a + b)).normalized().embed()
    assert scars.energy_variance(mix, h) > 1e-4


def test_excitation_survival():
    st = scars.left_edge(6)
    assert scars.excitation_survival(st, 0) == 1.0
    assert scars.excitation_survival(st, 3) == 0.0
    with pytest.raises(IndexError):
        scars.excitation_survival(st, 6)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        scars.boundary_state(0.0, 4)
    with pytest.raises(ValueError):
        scars.aqmbs_state(5, 0.0, 4)
    with pytest.raises(ValueError):
        scars.imbalance_expectation(2.0, 5)

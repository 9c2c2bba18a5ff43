import math

import numpy as np
import pytest

from scarlab import pvbs, scars
from scarlab.nativec.gates import Circuit, NativeGate
from scarlab.nativec.qasm import (
    QasmError,
    circuit_from_json,
    circuit_to_json,
    emit_qasm,
    parse_qasm,
)
from scarlab.nativec.stateprep import lower_to_native, synthesize_state_prep


def _sample_circuit():
    circ = Circuit(3)
    circ.append(NativeGate("X", (0,)))
    circ.append(NativeGate("U1q", (1,), (1.3782, -math.pi / 2)))
    circ.append(NativeGate("Rz", (0,), (0.1234567890123456,)))
    circ.append(NativeGate("ZZ", (0, 2), (-2.718281828459045,)))
    circ.append(NativeGate("Z", (2,)))
    return circ


def test_round_trip_exact():
    circ = _sample_circuit()
    back = parse_qasm(emit_qasm(circ))
    assert back.n_qubits == circ.n_qubits
    assert back.gates == circ.gates  # angles bit-identical via repr round trip


def test_round_trip_large_circuit():
    circ = lower_to_native(synthesize_state_prep(scars.aqmbs_state(1, 0.5, 12)))
    back = parse_qasm(emit_qasm(circ))
    assert back.gates == circ.gates
    assert np.linalg.norm(back.unitary() - circ.unitary()) < 1e-12


def test_header_declares_macros():
    text = emit_qasm(_sample_circuit())
    assert text.startswith("OPENQASM 2.0;")
    assert 'include "qelib1.inc";' in text
    assert "gate u1q(theta,phi) q" in text
    assert "gate rzz(eta) a,b" in text
    assert "qreg q[3];" in text


def test_splitter_has_no_qasm_form():
    circ = Circuit(2)
    circ.append(NativeGate("sp", (0, 1), (0.3,)))
    with pytest.raises(ValueError, match="lower"):
        emit_qasm(circ)


def test_parse_error_reports_line_and_column():
    text = emit_qasm(_sample_circuit())
    bad = text + "bogus q[0];\n"
    with pytest.raises(QasmError) as err:
        parse_qasm(bad)
    assert err.value.line == len(text.splitlines()) + 1
    assert err.value.column == 1
    assert "bogus" in str(err.value)


def test_parse_error_malformed_statement():
    with pytest.raises(QasmError, match="malformed"):
        parse_qasm('OPENQASM 2.0;\nqreg q[2];\nrz(abc) q[0];\n')


def test_parse_requires_qreg():
    with pytest.raises(QasmError, match="qreg"):
        parse_qasm("OPENQASM 2.0;\nrz(0.5) q[0];\n")
    with pytest.raises(QasmError, match="no qreg"):
        parse_qasm("OPENQASM 2.0;\n")


def test_parse_skips_comments():
    text = 'qreg q[1];\n// a comment\nx q[0]; // trailing\n'
    circ = parse_qasm(text)
    assert len(circ.gates) == 1 and circ.gates[0].kind == "X"


def test_json_round_trip():
    circ = _sample_circuit()
    back = circuit_from_json(circuit_to_json(circ))
    assert back.n_qubits == circ.n_qubits
    assert back.gates == circ.gates


def test_json_round_trips_splitters():
    circ = Circuit(4)
    circ.append(NativeGate("sp", (0, 2), (0.77,)))
    back = circuit_from_json(circuit_to_json(circ))
    assert back.gates == circ.gates


def test_json_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown keys"):
        circuit_from_json('{"n_qubits": 2, "gates": [], "extra": 1}')


def test_compiled_gate_survives_round_trip():
    from scarlab.nativec import decompose_restricted
    circ, phase = decompose_restricted(1.5, pvbs.PAPER_GEN_EVEN)
    back = parse_qasm(emit_qasm(circ))
    target = pvbs.floquet_gate(1.5, pvbs.PAPER_GEN_EVEN)
    assert np.linalg.norm(phase * back.unitary() - target) < 1e-9

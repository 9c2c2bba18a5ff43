"""OpenQASM 2.0 serialization of native circuits.

Emitted programs declare the two non-standard gates as macros over qelib
primitives (u1q as a Z-conjugated X rotation, rzz as a CX-conjugated Rz),
so the text is loadable by stock OpenQASM 2.0 tooling. Angles are printed
with repr precision (17 significant digits) and round-trip exactly
through parse_qasm.
"""

from __future__ import annotations

import json
import re

from .gates import Circuit, NativeGate

_HEADER = (
    'OPENQASM 2.0;\n'
    'include "qelib1.inc";\n'
    'gate u1q(theta,phi) q { rz(-phi) q; rx(theta) q; rz(phi) q; }\n'
    'gate rzz(eta) a,b { cx a,b; rz(eta) b; cx a,b; }\n'
)


class QasmError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _fmt(x: float) -> str:
    return repr(float(x))


def emit_qasm(circuit: Circuit) -> str:
    """Serialize a native circuit (no abstract splitters) to OpenQASM 2.0."""
    lines = [_HEADER + f"qreg q[{circuit.n_qubits}];"]
    for gate in circuit.gates:
        if gate.kind == "U1q":
            theta, phi = gate.angles
            lines.append(f"u1q({_fmt(theta)},{_fmt(phi)}) q[{gate.qubits[0]}];")
        elif gate.kind == "Rz":
            lines.append(f"rz({_fmt(gate.angles[0])}) q[{gate.qubits[0]}];")
        elif gate.kind == "ZZ":
            q1, q2 = gate.qubits
            lines.append(f"rzz({_fmt(gate.angles[0])}) q[{q1}],q[{q2}];")
        elif gate.kind == "X":
            lines.append(f"x q[{gate.qubits[0]}];")
        elif gate.kind == "Z":
            lines.append(f"z q[{gate.qubits[0]}];")
        else:
            raise ValueError(
                f"gate kind {gate.kind!r} has no QASM form; lower it first")
    return "\n".join(lines) + "\n"


_FLOAT = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_PATTERNS = {
    "u1q": re.compile(rf"u1q\(({_FLOAT}),({_FLOAT})\)\s+q\[(\d+)\];$"),
    "rz": re.compile(rf"rz\(({_FLOAT})\)\s+q\[(\d+)\];$"),
    "rzz": re.compile(rf"rzz\(({_FLOAT})\)\s+q\[(\d+)\],q\[(\d+)\];$"),
    "x": re.compile(r"x\s+q\[(\d+)\];$"),
    "z": re.compile(r"z\s+q\[(\d+)\];$"),
}
_QREG = re.compile(r"qreg\s+q\[(\d+)\];$")
_SKIP = re.compile(r"(OPENQASM|include|gate)\b")


def parse_qasm(text: str) -> Circuit:
    """Parse a program produced by emit_qasm back into a Circuit."""
    circuit: Circuit | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or _SKIP.match(line):
            continue
        m = _QREG.match(line)
        if m:
            if circuit is not None:
                raise QasmError("duplicate qreg declaration", lineno,
                                raw.index("qreg") + 1)
            circuit = Circuit(int(m.group(1)))
            continue
        if circuit is None:
            raise QasmError("gate before qreg declaration", lineno, 1)
        col = len(raw) - len(raw.lstrip()) + 1
        word = line.split("(")[0].split()[0]
        pat = _PATTERNS.get(word)
        if pat is None:
            raise QasmError(f"unknown statement {word!r}", lineno, col)
        m = pat.match(line)
        if m is None:
            raise QasmError(f"malformed {word} statement", lineno, col)
        g = m.groups()
        try:
            if word == "u1q":
                gate = NativeGate("U1q", (int(g[2]),), (float(g[0]), float(g[1])))
            elif word == "rz":
                gate = NativeGate("Rz", (int(g[1]),), (float(g[0]),))
            elif word == "rzz":
                gate = NativeGate("ZZ", (int(g[1]), int(g[2])), (float(g[0]),))
            else:
                gate = NativeGate("X" if word == "x" else "Z", (int(g[0]),))
            circuit.append(gate)
        except ValueError as exc:
            raise QasmError(str(exc), lineno, col) from exc
    if circuit is None:
        raise QasmError("no qreg declaration found", 1, 1)
    return circuit


def circuit_to_json(circuit: Circuit) -> str:
    """Machine-exchange form: {"n_qubits": N, "gates": [{kind, qubits, angles}]}."""
    doc = {
        "n_qubits": circuit.n_qubits,
        "gates": [
            {"kind": g.kind, "qubits": list(g.qubits), "angles": list(g.angles)}
            for g in circuit.gates
        ],
    }
    return json.dumps(doc, indent=2)


def circuit_from_json(text: str) -> Circuit:
    doc = json.loads(text)
    extra = set(doc) - {"n_qubits", "gates"}
    if extra:
        raise ValueError(f"unknown keys in circuit JSON: {sorted(extra)}")
    circuit = Circuit(int(doc["n_qubits"]))
    for rec in doc["gates"]:
        circuit.append(NativeGate(rec["kind"], tuple(rec["qubits"]),
                                  tuple(rec.get("angles", ()))))
    return circuit

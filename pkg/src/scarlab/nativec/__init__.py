"""Native-gate compilation for the trapped-ion target: two-qubit unitary
decomposition into ZZ + single-qubit rotations, state-preparation circuit
synthesis, calibrated-angle fixtures and OpenQASM round-tripping."""

from .gates import Circuit, NativeGate, phase_insensitive_distance
from .kak import decompose_general, decompose_restricted

__all__ = [
    "Circuit",
    "NativeGate",
    "decompose_general",
    "decompose_restricted",
    "phase_insensitive_distance",
]

"""Floquet time-evolution harness: initial states, per-step observables,
projective measurement sampling, optional depolarizing/SPAM noise via
Monte Carlo trajectories, and CSV/JSON serialization of the results.

Shot mode emulates the experimental protocol: each time point is measured
terminally (a fresh evolution to t, then computational-basis readout).
For unitary evolution this is equivalent to recording along a single
trajectory, which is how it is implemented. The fidelity and half-chain
entropy observables are not estimable from bitstring counts alone and are
always reported exactly, also in shot mode.

Reproducibility: all randomness derives from one root seed through
numpy's SeedSequence spawning, one child stream per trajectory (and per
time point for measurement sampling), so results are bit-identical for a
given config regardless of the worker-thread count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import pvbs, scars
from .qops import StateVector, apply_single_qubit, apply_two_qubit

OBSERVABLES = ("m_total", "m_sites", "fidelity", "imbalance", "half_entropy")
INITIAL_STATES = ("vacuum", "ones", "left_edge", "boundary", "aqmbs",
                  "prep_fixture", "prep_synthesized")

_PAULI_1 = [
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
]


def worker_count() -> int:
    """Thread cap from the SCARLAB_THREADS environment variable."""
    try:
        return max(1, int(os.environ.get("SCARLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class NoiseModel:
    """Coarse error model: depolarizing after gates plus SPAM bit flips.

    p1/p2 are per-gate depolarizing probabilities (single-/two-qubit).
    p_spam is the total per-qubit SPAM budget, split evenly between a bit
    flip at preparation and one at readout (so a t = 0 measurement sees
    magnetisation N(1 - p_spam)^2 = N(1 - 2 p_spam) + O(p_spam^2)).
    """

    p1: float = 0.0
    p2: float = 0.0
    p_spam: float = 0.0

    def __post_init__(self):
        for name in ("p1", "p2", "p_spam"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} = {p} outside [0, 1]")

    @property
    def trivial(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.p_spam == 0.0


@dataclass(frozen=True)
class RunConfig:
    params: pvbs.ModelParams
    steps: int
    initial: str = "vacuum"
    observables: tuple[str, ...] = ("m_total",)
    shots: int = 0
    noise: NoiseModel | None = None
    seed: int = 0
    k: int = 1          # mode index for the aqmbs initial state
    phi: float = 0.0    # its phase parameter

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.shots < 0:
            raise ValueError("shots must be >= 0")
        if self.initial not in INITIAL_STATES:
            raise ValueError(f"unknown initial state {self.initial!r}")
        unknown = set(self.observables) - set(OBSERVABLES)
        if unknown:
            raise ValueError(f"unknown observables {sorted(unknown)}")


@dataclass
class TimeSeries:
    t: np.ndarray
    columns: dict[str, np.ndarray]
    site_values: np.ndarray | None = None      # shape (T+1, N) when m_sites
    counts: list[dict[str, int]] | None = None
    stderr: dict[str, np.ndarray] = field(default_factory=dict)

    def to_csv(self) -> str:
        headers = ["t"] + list(self.columns)
        cols = [self.t] + [self.columns[k] for k in self.columns]
        if self.site_values is not None:
            n = self.site_values.shape[1]
            headers += [f"z_{i}" for i in range(n)]
            cols += [self.site_values[:, i] for i in range(n)]
        lines = [",".join(headers)]
        for row in zip(*cols):
            lines.append(",".join(
                str(int(v)) if isinstance(v, (int, np.integer)) else f"{v:.17g}"
                for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "t": [int(x) for x in self.t],
            "columns": {k: list(map(float, v)) for k, v in self.columns.items()},
        }
        if self.site_values is not None:
            doc["site_values"] = self.site_values.tolist()
        if self.counts is not None:
            doc["counts"] = self.counts
        if self.stderr:
            doc["stderr"] = {k: list(map(float, v)) for k, v in self.stderr.items()}
        return json.dumps(doc, indent=2)


def initial_state(config: RunConfig) -> StateVector:
    n = config.params.n_qubits
    name = config.initial
    if name == "vacuum":
        return scars.product_vacuum(n)
    if name == "ones":
        return scars.all_ones(n)
    if name == "left_edge":
        return scars.left_edge(n)
    if name == "boundary":
        return scars.boundary_state(config.params.g, n).embed()
    if name == "aqmbs":
        return scars.aqmbs_state(config.k, config.phi, n).embed()
    if name == "prep_fixture":
        from .nativec.stateprep import sm_prep_fixture
        return sm_prep_fixture(n).apply(scars.product_vacuum(n))
    from .nativec.stateprep import synthesize_state_prep
    target = scars.aqmbs_state(config.k, config.phi, n)
    return synthesize_state_prep(target).apply(scars.product_vacuum(n))


def _site_occupations(probs: np.ndarray, n: int) -> np.ndarray:
    """<n_i> per site from basis-state probabilities."""
    occ = np.empty(n)
    for site in range(n):
        bit = (np.arange(probs.size) >> (n - 1 - site)) & 1
        occ[site] = float(probs @ bit)
    return occ


def _record(state: StateVector, ref: StateVector, config: RunConfig,
            probs: np.ndarray | None = None) -> dict:
    """Observable values of one time point (probs may be sampled)."""
    n = state.n_qubits
    if probs is None:
        probs = state.probabilities()
    out = {}
    occ = _site_occupations(probs, n)
    z = 1.0 - 2.0 * occ
    for obs in config.observables:
        if obs == "m_total":
            out[obs] = float(z.sum())
        elif obs == "m_sites":
            out[obs] = z.copy()
        elif obs == "imbalance":
            half = n // 2
            out[obs] = float(occ[:half].sum() - occ[half:].sum())
        elif obs == "fidelity":
            out[obs] = state.fidelity(ref)
        else:
            out[obs] = scars.half_chain_entropy(state)
    return out


def sample_measurements(state: StateVector, shots: int, seed) -> dict[str, int]:
    """Multinomial computational-basis sample; keys are site-ordered
    bitstrings. ``seed`` may be an int or a SeedSequence."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    draws = rng.multinomial(shots, probs)
    n = state.n_qubits
    return {format(i, f"0{n}b"): int(c) for i, c in enumerate(draws) if c}


def _counts_to_probs(counts: dict[str, int], n: int, shots: int) -> np.ndarray:
    probs = np.zeros(2**n)
    for bits, c in counts.items():
        probs[int(bits, 2)] = c / shots
    return probs


def _assemble(records: list[dict], config: RunConfig) -> TimeSeries:
    tgrid = np.arange(config.steps + 1)
    columns = {}
    site_values = None
    for obs in config.observables:
        if obs == "m_sites":
            site_values = np.array([r[obs] for r in records])
        else:
            columns[obs] = np.array([r[obs] for r in records])
    return TimeSeries(t=tgrid, columns=columns, site_values=site_values)


def evolve(config: RunConfig) -> TimeSeries:
    """Noiseless evolution under the brickwork circuit, observables
    recorded at t = 0 and after each of the T periods."""
    if config.params.n_qubits > pvbs.STREAM_N_MAX:
        raise ValueError(f"N = {config.params.n_qubits} exceeds the "
                         f"statevector cap ({pvbs.STREAM_N_MAX})")
    state = initial_state(config)
    ref = state.copy()
    seeds = (np.random.SeedSequence(config.seed).spawn(config.steps + 1)
             if config.shots else None)

    records = []
    counts_log = [] if config.shots else None
    for t in range(config.steps + 1):
        if t:
            state = pvbs.apply_floquet_step(state, config.params)
        if config.shots:
            counts = sample_measurements(state, config.shots, seeds[t])
            counts_log.append(counts)
            probs = _counts_to_probs(counts, state.n_qubits, config.shots)
            records.append(_record(state, ref, config, probs=probs))
        else:
            records.append(_record(state, ref, config))
    series = _assemble(records, config)
    series.counts = counts_log
    return series


def site_resolved_profile(config: RunConfig) -> np.ndarray:
    """<Z_n(t)> as an N x (T+1) array."""
    cfg = RunConfig(params=config.params, steps=config.steps,
                    initial=config.initial, observables=("m_sites",),
                    shots=config.shots, seed=config.seed,
                    k=config.k, phi=config.phi)
    series = evolve(cfg)
    return series.site_values.T.copy()


def _maybe_depolarize(state, qubits, p, rng):
    if p and rng.random() < p:
        for q in qubits:
            pauli = rng.integers(0, 4)
            if pauli:
                state = apply_single_qubit(state, _PAULI_1[pauli - 1], q)
    return state


def _noisy_trajectory(config: RunConfig, ref: StateVector, seed) -> list[dict]:
    rng = np.random.default_rng(seed)
    noise = config.noise
    n = config.params.n_qubits
    state = initial_state(config)
    flip = _PAULI_1[0]
    p_stage = noise.p_spam / 2.0
    for q in range(n):
        if p_stage and rng.random() < p_stage:
            state = apply_single_qubit(state, flip, q)

    u_e, u_o = pvbs.floquet_gates(config.params)
    records = []
    for t in range(config.steps + 1):
        if t:
            for q in range(0, n - 1, 2):
                state = apply_two_qubit(state, u_e, q, q + 1, validate=False)
                state = _maybe_depolarize(state, (q, q + 1), noise.p2, rng)
            for q in range(1, n - 2, 2):
                state = apply_two_qubit(state, u_o, q, q + 1, validate=False)
                state = _maybe_depolarize(state, (q, q + 1), noise.p2, rng)
            # compiled single-qubit rotations, one effective gate per site
            for q in range(n):
                state = _maybe_depolarize(state, (q,), noise.p1, rng)
        # readout bit flips, applied to a measurement copy only
        readout = state
        for q in range(n):
            if p_stage and rng.random() < p_stage:
                readout = apply_single_qubit(readout, flip, q)
        records.append(_record(readout, ref, config))
    return records


def noisy_evolve(config: RunConfig) -> TimeSeries:
    """Monte Carlo trajectory average under the configured noise model;
    one trajectory per shot, means reported with standard errors."""
    if config.noise is None:
        raise ValueError("noisy_evolve needs a noise model")
    if config.shots < 1:
        raise ValueError("noisy evolution is trajectory-sampled; shots >= 1")
    ref = initial_state(config)
    children = np.random.SeedSequence(config.seed).spawn(config.shots)

    workers = min(worker_count(), config.shots)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trajectories = list(pool.map(
                lambda s: _noisy_trajectory(config, ref, s), children))
    else:
        trajectories = [_noisy_trajectory(config, ref, s) for s in children]

    tgrid = np.arange(config.steps + 1)
    columns, stderr = {}, {}
    site_values = None
    for obs in config.observables:
        data = np.array([[rec[obs] for rec in traj] for traj in trajectories])
        mean = data.mean(axis=0)
        if obs == "m_sites":
            site_values = mean
        else:
            columns[obs] = mean
            stderr[obs] = data.std(axis=0, ddof=1) / math.sqrt(len(trajectories)) \
                if len(trajectories) > 1 else np.zeros_like(mean)
    return TimeSeries(t=tgrid, columns=columns, site_values=site_values,
                      stderr=stderr)

"""Command-line entry point tying the simulator, compiler and diagnostics
together.

Subcommands: evolve, spectrum, compile, prepare, verify, sweep. Every
command writes a JSON manifest echoing the full configuration (plus code
version and wall time) next to its data files, so any run can be
reproduced bit-identically. All files are written atomically (temp file
plus rename). Exit codes: 0 success, 2 invalid configuration, 3 resource
cap exceeded, 4 verification tolerance failure, 5 invariant-suite
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, pvbs, scars, spectra
from .dynamics import NoiseModel, RunConfig, evolve, noisy_evolve, worker_count
from .nativec.gates import phase_insensitive_distance
from .nativec.kak import decompose_restricted
from .nativec.qasm import circuit_to_json, emit_qasm
from .nativec.stateprep import (SM_FIXTURE_SIZES, lower_to_native,
                                sm_prep_fixture, synthesize_state_prep)
from .qops import StateVector

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4
EXIT_SUITE = 5


class ConfigError(ValueError):
    pass


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_manifest(out_dir: str, command: str, settings: dict,
                   outputs: list[str], t_start: float) -> None:
    manifest = {
        "command": command,
        "settings": settings,
        "outputs": outputs,
        "version": __version__,
        "wall_time_s": round(time.monotonic() - t_start, 3),
    }
    atomic_write(os.path.join(out_dir, f"{command}_manifest.json"),
                 json.dumps(manifest, indent=2) + "\n")


def parse_g(text: str) -> complex:
    """Scalar real, 're,im' pair, or python complex literal."""
    try:
        if "," in text:
            re_part, im_part = text.split(",")
            g = complex(float(re_part), float(im_part))
        else:
            g = complex(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse g from {text!r}") from exc
    return g.real if g.imag == 0 else g


def parse_gens(text: str):
    """Named preset or a JSON file with even/odd coefficient records."""
    if text in pvbs.GENERATOR_PRESETS:
        return pvbs.GENERATOR_PRESETS[text]
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            doc = json.load(fh)
        extra = set(doc) - {"even", "odd"}
        if extra:
            raise ConfigError(f"unknown keys in generator JSON: {sorted(extra)}")
        out = []
        for key in ("even", "odd"):
            rec = doc.get(key, {})
            bad = set(rec) - {"a", "b", "c"}
            if bad:
                raise ConfigError(f"unknown generator fields: {sorted(bad)}")
            c = rec.get("c", 0)
            if isinstance(c, list):
                c = complex(c[0], c[1])
            out.append(pvbs.GeneratorCoeffs(rec.get("a", 0.0), rec.get("b", 0.0), c))
        return tuple(out)
    raise ConfigError(f"unknown generator preset or file: {text!r}")


_INIT_ALIASES = {"vacuum": "vacuum", "ones": "ones", "left": "left_edge",
                 "boundary": "boundary", "a1": "aqmbs", "a": "aqmbs",
                 "fixture": "prep_fixture", "synth": "prep_synthesized"}


def _load_json_config(path: str, allowed: set) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    extra = set(doc) - allowed
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")
    return doc


# -- evolve -------------------------------------------------------------------

_EVOLVE_KEYS = {"n", "g", "steps", "init", "gens", "shots", "noise", "seed",
                "k", "phi", "out", "run_id"}


def cmd_evolve(args) -> int:
    t0 = time.monotonic()
    try:
        settings = dict(n=args.n, g=args.g, steps=args.steps, init=args.init,
                        gens=args.gens, shots=args.shots, noise=args.noise,
                        seed=args.seed, k=args.k, phi=args.phi,
                        out=args.out, run_id=args.run_id)
        if args.config:
            settings.update(_load_json_config(args.config, _EVOLVE_KEYS))
        g = parse_g(str(settings["g"]))
        gen_even, gen_odd = parse_gens(settings["gens"])
        init = _INIT_ALIASES.get(settings["init"])
        if init is None:
            raise ConfigError(f"unknown initial state {settings['init']!r}")
        noise = None
        if settings["noise"]:
            parts = [float(x) for x in str(settings["noise"]).split(",")]
            if len(parts) != 3:
                raise ConfigError("noise must be 'p1,p2,p_spam'")
            noise = NoiseModel(*parts)
        params = pvbs.ModelParams(g=g, n_qubits=int(settings["n"]),
                                  gen_even=gen_even, gen_odd=gen_odd)
        observables = ("m_total", "m_sites", "fidelity", "imbalance")
        if params.n_qubits <= 20:
            observables += ("half_entropy",)
        config = RunConfig(params=params, steps=int(settings["steps"]),
                           initial=init, observables=observables,
                           shots=int(settings["shots"]), noise=noise,
                           seed=int(settings["seed"]), k=int(settings["k"]),
                           phi=float(settings["phi"]))
    except (ConfigError, ValueError) as exc:
        return _fail(str(exc), EXIT_CONFIG)

    try:
        series = noisy_evolve(config) if noise is not None else evolve(config)
    except ValueError as exc:
        if "cap" in str(exc):
            return _fail(str(exc), EXIT_RESOURCE)
        return _fail(str(exc), EXIT_CONFIG)

    g_tag = f"{g.real:g}" if isinstance(g, float) or g.imag == 0 else f"{g:g}"
    stem = f"{settings['run_id']}_{params.n_qubits}_{g_tag}"
    out_dir = settings["out"]
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    json_path = os.path.join(out_dir, f"{stem}.json")
    atomic_write(csv_path, series.to_csv())
    atomic_write(json_path, series.to_json() + "\n")
    write_manifest(out_dir, "evolve", settings, [csv_path, json_path], t0)
    print(f"wrote {csv_path}")
    return EXIT_OK


# -- spectrum -----------------------------------------------------------------

def cmd_spectrum(args) -> int:
    t0 = time.monotonic()
    try:
        g = parse_g(args.g)
        gen_even, gen_odd = parse_gens(args.gens)
        if args.n > spectra.ED_N_MAX:
            return _fail(f"N = {args.n} exceeds the dense ED cap "
                         f"({spectra.ED_N_MAX})", EXIT_RESOURCE)
        if args.sector != "all" and g not in (1, -1):
            return _fail("sector resolution only exists at g = +-1; "
                         "rerun with --sector all", EXIT_CONFIG)
        params = pvbs.ModelParams(g=g, n_qubits=args.n,
                                  gen_even=gen_even, gen_odd=gen_odd)
    except (ConfigError, ValueError) as exc:
        return _fail(str(exc), EXIT_CONFIG)

    if args.model == "floquet":
        records, vecs = spectra.floquet_spectrum(params)
    else:
        records, vecs = spectra.hamiltonian_spectrum(params)
    resolved = False
    if g in (1, -1):
        try:
            spectra.symmetry_resolve(records, vecs, g)
            resolved = True
        except RuntimeError as exc:
            print(f"warning: symmetry resolution failed ({exc}); "
                  "continuing unresolved", file=sys.stderr)
    if args.entanglement:
        spectra.entanglement_scan(records, vecs)

    out_dir = args.out
    lines = ["value,sector,entanglement,cluster"]
    for rec in records:
        ent = "" if rec.entanglement is None else f"{rec.entanglement:.17g}"
        lines.append(f"{rec.value:.17g},{rec.sector},{ent},{rec.degeneracy_cluster}")
    csv_path = os.path.join(out_dir, f"spectrum_{args.n}_{args.g}.csv")
    atomic_write(csv_path, "\n".join(lines) + "\n")
    outputs = [csv_path]

    report = {}
    if args.stats:
        sectors = ["even", "odd"] if (resolved and args.sector == "all") \
            else [args.sector if args.sector != "all" else "none"]
        for sector in sectors:
            stats = spectra.level_spacing_stats(records, sector=sector)
            edges, dens = stats.histogram
            report[f"mean_r_{sector}"] = stats.mean_r
            report[f"histogram_{sector}"] = {
                "edges": list(map(float, edges)), "density": list(map(float, dens))}
    if args.zero_modes:
        report["zero_modes"] = spectra.zero_mode_count(params)
    if report:
        stats_path = os.path.join(out_dir, f"spectrum_{args.n}_{args.g}_stats.json")
        atomic_write(stats_path, json.dumps(report, indent=2) + "\n")
        outputs.append(stats_path)
        for key, value in report.items():
            if not key.startswith("histogram"):
                print(f"{key}: {value}")
    write_manifest(out_dir, "spectrum", vars(args) | {"func": None}, outputs, t0)
    return EXIT_OK


# -- compile / prepare --------------------------------------------------------

def cmd_compile(args) -> int:
    t0 = time.monotonic()
    try:
        g = parse_g(args.g)
        coeffs = pvbs.PAPER_GEN_EVEN if args.which == "even" else pvbs.PAPER_GEN_ODD
        target = pvbs.floquet_gate(g, coeffs)
        circuit, phase = decompose_restricted(g, coeffs)
    except (ConfigError, ValueError) as exc:
        return _fail(str(exc), EXIT_CONFIG)

    out_dir = args.out
    ext = "qasm" if args.emit == "qasm" else "json"
    path = os.path.join(out_dir, f"gate_{args.which}_{args.g}.{ext}")
    text = emit_qasm(circuit) if args.emit == "qasm" else circuit_to_json(circuit) + "\n"
    atomic_write(path, text)
    write_manifest(out_dir, "compile", vars(args) | {"func": None}, [path], t0)
    print(f"wrote {path} ({circuit.entangling_count} entangling gates)")

    if args.verify:
        d = phase_insensitive_distance(phase * circuit.unitary(), target)
        print(f"reconstruction distance: {d:.3e}")
        if d > 1e-9:
            return _fail(f"verification failed: distance {d:.3e} > 1e-9",
                         EXIT_VERIFY)
    return EXIT_OK


def cmd_prepare(args) -> int:
    t0 = time.monotonic()
    try:
        if args.fixture:
            if args.n not in SM_FIXTURE_SIZES:
                return _fail(f"no published fixture for N = {args.n}; "
                             f"available: {SM_FIXTURE_SIZES}", EXIT_CONFIG)
            circuit = sm_prep_fixture(args.n)
        else:
            target = scars.aqmbs_state(args.k, args.phi, args.n)
            circuit = synthesize_state_prep(target)
        native = lower_to_native(circuit)
    except (ValueError, RuntimeError) as exc:
        return _fail(str(exc), EXIT_CONFIG)

    out_dir = args.out
    ext = "qasm" if args.emit == "qasm" else "json"
    path = os.path.join(out_dir, f"prep_{args.n}_k{args.k}.{ext}")
    text = emit_qasm(native) if args.emit == "qasm" else circuit_to_json(native) + "\n"
    atomic_write(path, text)
    write_manifest(out_dir, "prepare", vars(args) | {"func": None}, [path], t0)
    print(f"wrote {path} (splitters: {circuit.entangling_count}, "
          f"depth: {circuit.entangling_depth})")

    if args.verify:
        out_state = circuit.apply(scars.product_vacuum(args.n))
        target_state = scars.aqmbs_state(args.k, args.phi, args.n).embed()
        fid = target_state.fidelity(out_state)
        print(f"preparation fidelity: {fid:.12f}")
        threshold = 0.999 if args.fixture else 1 - 1e-10
        if fid < threshold:
            return _fail(f"verification failed: fidelity {fid:.6f} < {threshold}",
                         EXIT_VERIFY)
    return EXIT_OK


# -- verify suites ------------------------------------------------------------

def _suite_scars(sizes):
    rng = np.random.default_rng(11)
    checks = []
    for n in sizes:
        for g in (2.0 / 3.0, 1.0, 1.5, 0.7 + 0.4j):
            gens = tuple(
                pvbs.GeneratorCoeffs(rng.normal(), rng.normal(),
                                     complex(rng.normal(), rng.normal()))
                for _ in range(2))
            params = pvbs.ModelParams(g=g, n_qubits=n, gen_even=gens[0],
                                      gen_odd=gens[1])
            for name, state in (("vacuum", scars.product_vacuum(n)),
                                ("boundary", scars.boundary_state(g, n).embed())):
                resid = pvbs.apply_hamiltonian(state, params).norm()
                checks.append((f"H@{name} N={n} g={g}", resid, 1e-12))
            state = scars.boundary_state(g, n).embed()
            stepped = pvbs.apply_floquet_step(state, params)
            drift = float(np.linalg.norm(stepped.amplitudes - state.amplitudes))
            checks.append((f"U fixed point N={n} g={g}", drift, 1e-10))
    return checks


def _suite_aqmbs(sizes):
    checks = []
    result = spectra.verify_aqmbs_scaling(1.0, 1, sorted(sizes))
    for n, resid in zip(result.sizes, result.residuals):
        checks.append((f"residual N={n}", resid, 2.0))
    checks.append(("residuals strictly decreasing",
                   0.0 if result.monotone else 1.0, 0.5))
    return checks


def _suite_symmetry(sizes):
    checks = []
    for n in sizes:
        if n > spectra.ED_N_MAX or n % 2:
            continue
        for g in (1.0, -1.0):
            u = pvbs.floquet_unitary(pvbs.ModelParams(g=g, n_qubits=n))
            s = spectra.symmetry_operator(n, g)
            comm = float(np.max(np.abs(u @ s - s @ u)))
            checks.append((f"commutant g={g} N={n}", comm, 1e-10))
    return checks


def _suite_closedforms(sizes):
    checks = []
    for n in sizes:
        if n % 2:
            continue
        for g in (0.5, 2.0 / 3.0, 1.0, 2.0):
            state = scars.boundary_state(g, n).embed()
            imb = scars.imbalance_operator_check(state)
            checks.append((f"imbalance g={g} N={n}",
                           abs(imb - scars.imbalance_expectation(g, n)), 1e-12))
            ent = scars.half_chain_entropy(state)
            checks.append((f"entropy g={g} N={n}",
                           abs(ent - scars.boundary_entropy(g, n)), 1e-12))
    return checks


def _suite_east_west(sizes):
    """Structural kinetic-constraint checks of the g = 0 and |g| >> 1 limits:
    the local term conditions on the left (resp. right) qubit being |1>."""
    checks = []
    coeffs = pvbs.PAPER_GEN_EVEN
    east = pvbs.local_interaction(0.0, coeffs)
    # rows/columns with the first qubit in |0> must vanish
    checks.append(("east limit support", float(np.max(np.abs(east[:2, :]))), 1e-14))
    west = pvbs.local_interaction(1e3, coeffs)
    # rows/columns with the second qubit in |0> vanish as 1/|g|
    off = max(np.max(np.abs(west[0, :])), np.max(np.abs(west[2, :])))
    checks.append(("west limit support", float(off), 1e-2))
    return checks


_SUITES = {
    "scars": _suite_scars,
    "aqmbs": _suite_aqmbs,
    "symmetry": _suite_symmetry,
    "closedforms": _suite_closedforms,
    "east-west": _suite_east_west,
}


def cmd_verify(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else [6, 8]
        names = list(_SUITES) if args.suite == "all" else [args.suite]
    except ValueError as exc:
        return _fail(str(exc), EXIT_CONFIG)

    failures = 0
    for name in names:
        for label, value, tol in _SUITES[name](sizes):
            ok = value <= tol
            failures += 0 if ok else 1
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {label}: "
                  f"{value:.3e} (tol {tol:.0e})")
    if failures:
        return _fail(f"{failures} suite check(s) failed", EXIT_SUITE)
    return EXIT_OK


# -- sweep --------------------------------------------------------------------

def _sweep_point(g: float, n: int, quantity: str) -> float:
    if quantity == "gap":
        evals, _ = spectra.single_excitation_solver(g, n)
        return float(evals[1] - evals[0])
    if quantity == "imbalance":
        return scars.imbalance_expectation(g, n)
    if quantity == "entropy":
        return scars.boundary_entropy(g, n)
    return scars.localization_length(g)


def cmd_sweep(args) -> int:
    t0 = time.monotonic()
    if args.points < 2 or args.to <= args.from_:
        return _fail("need --points >= 2 and --to > --from", EXIT_CONFIG)
    grid = np.linspace(args.from_, args.to, args.points)
    if args.quantity == "xi" and np.any(np.isclose(np.abs(grid), 1.0)):
        return _fail("xi diverges at |g| = 1; exclude it from the range",
                     EXIT_CONFIG)

    workers = min(worker_count(), args.points)
    task = lambda g: _sweep_point(float(g), args.n, args.quantity)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(task, grid))
    else:
        values = [task(g) for g in grid]

    lines = [f"g,{args.quantity}"]
    lines += [f"{g:.17g},{v:.17g}" for g, v in zip(grid, values)]
    path = os.path.join(args.out, f"sweep_{args.quantity}_{args.n}.csv")
    atomic_write(path, "\n".join(lines) + "\n")
    write_manifest(args.out, "sweep", vars(args) | {"func": None}, [path], t0)
    print(f"wrote {path}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scarlab",
        description="Simulator and native-gate compiler for deformed "
                    "frustration-free scar models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="Floquet time evolution")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--g", type=str, default="1")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--init", type=str, default="vacuum")
    p.add_argument("--gens", type=str, default="paper")
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--noise", type=str, default="")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--out", type=str, default=".")
    p.add_argument("--run-id", dest="run_id", type=str, default="run")
    p.add_argument("--config", type=str, default="")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("spectrum", help="dense eigensystem diagnostics")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--g", type=str, default="1")
    p.add_argument("--gens", type=str, default="smF-nodeg")
    p.add_argument("--model", choices=("hamiltonian", "floquet"), default="floquet")
    p.add_argument("--sector", choices=("even", "odd", "all"), default="all")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--entanglement", action="store_true")
    p.add_argument("--zero-modes", dest="zero_modes", action="store_true")
    p.add_argument("--out", type=str, default=".")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compile", help="compile a brickwork gate to native gates")
    p.add_argument("--g", type=str, required=True)
    p.add_argument("--which", choices=("even", "odd"), default="even")
    p.add_argument("--emit", choices=("qasm", "json"), default="qasm")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", type=str, default=".")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("prepare", help="synthesize a state-preparation circuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--emit", choices=("qasm", "json"), default="qasm")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--fixture", action="store_true")
    p.add_argument("--out", type=str, default=".")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=tuple(_SUITES) + ("all",), default="all")
    p.add_argument("--sizes", type=str, default="")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="sweep a closed-form quantity over g")
    p.add_argument("--param", choices=("g",), default="g")
    p.add_argument("--from", dest="from_", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--quantity", choices=("gap", "imbalance", "entropy", "xi"),
                   required=True)
    p.add_argument("--out", type=str, default=".")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

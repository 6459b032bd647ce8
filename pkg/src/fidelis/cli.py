"""Command-line front end for estimation, simulation, and design studies.

Exit codes are a stable scripting contract: 0 on success, 1 for input
errors (missing/malformed files, bad values), 2 for unsupported features
(gates outside the model, conditionals, circuits beyond the oracle cap).
All file outputs are written atomically (temp file + rename). The
``FIDELIS_LOG`` environment variable (debug/info/warning/error) controls
diagnostic verbosity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import analysis, circuit, estimators, oracle
from .calibration import load_calibration
from .errors import FidelisError, InputError, SimulationSizeError, UnsupportedFeatureError
from .qasm import emit_qasm, parse_qasm

log = logging.getLogger("fidelis")


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems as input errors (exit 1)."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _read_circuit(path: str) -> circuit.Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_qasm(fh.read())


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _config_from_args(args, include_coherence: bool | None = None) -> estimators.EstimatorConfig:
    return estimators.EstimatorConfig(
        p_ent=args.p_ent,
        include_coherence=(
            args.coherence if include_coherence is None else include_coherence
        ),
        include_measurement=getattr(args, "measurement", False),
        qva_w=args.w,
    )


_ESTIMATORS = {
    "proposed": estimators.estimate_proposed,
    "esp": estimators.estimate_esp,
    "qva": estimators.estimate_qva,
}


def cmd_estimate(args) -> int:
    circ = _read_circuit(args.qasm)
    calib = load_calibration(args.calibration)
    cfg = _config_from_args(args)
    est = _ESTIMATORS[args.method](circ, calib, cfg)
    report = {
        "method": est.method,
        "value": est.value,
        "lower": est.lower,
        "upper": est.upper,
        "n_qubits": circ.n_qubits,
        "n_gates": circ.n_gates,
        "config": {
            "p_ent": cfg.p_ent,
            "qva_w": cfg.qva_w,
            "include_coherence": cfg.include_coherence,
            "include_measurement": cfg.include_measurement,
        },
    }
    _write_output(json.dumps(report, indent=2), args.out)
    return 0


def cmd_simulate(args) -> int:
    circ = _read_circuit(args.qasm)
    calib = load_calibration(args.calibration)
    state = oracle.simulate_noisy(circ, calib, max_qubits=args.oracle_cap)
    ideal = oracle.simulate_ideal(circ, max_qubits=args.oracle_cap)
    report = {
        "fidelity": oracle.fidelity_pure_mixed(ideal, state),
        "purity": state.purity(),
        "n_qubits": circ.n_qubits,
        "n_gates": circ.n_gates,
    }
    _write_output(json.dumps(report, indent=2), args.out)
    return 0


def cmd_compare(args) -> int:
    circ = _read_circuit(args.qasm)
    calib = load_calibration(args.calibration)
    circuit_id = Path(args.qasm).stem

    oracle_fid: float | None = None
    oracle_note = ""
    if args.with_oracle:
        try:
            state = oracle.simulate_noisy(circ, calib, max_qubits=args.oracle_cap)
            ideal = oracle.simulate_ideal(circ, max_qubits=args.oracle_cap)
            oracle_fid = oracle.fidelity_pure_mixed(ideal, state)
        except SimulationSizeError as exc:
            oracle_note = "skipped: size"
            log.info("oracle skipped: %s", exc)

    rows = []
    measured = "" if oracle_fid is None else repr(oracle_fid)
    for name, fn in _ESTIMATORS.items():
        for with_coherence in (False, True):
            cfg = _config_from_args(args, include_coherence=with_coherence)
            try:
                est = fn(circ, calib, cfg)
                rows.append((est.method, repr(est.value), repr(est.lower),
                             repr(est.upper), ""))
            except FidelisError as exc:
                suffix = "+t12" if with_coherence else ""
                rows.append((name + suffix, "", "", "", str(exc)))
    if args.with_oracle:
        fid = "" if oracle_fid is None else repr(oracle_fid)
        rows.append(("oracle", fid, fid, fid, oracle_note))

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["circuit_id", "n_qubits", "n_gates", "method",
                     "predicted", "lower", "upper", "measured", "note"])
    for method, predicted, lower, upper, note in rows:
        writer.writerow([circuit_id, circ.n_qubits, circ.n_gates, method,
                         predicted, lower, upper, measured, note])
    _write_output(buf.getvalue(), args.out)
    return 0


def _resolve_family(args) -> tuple:
    """Shared --family/--qasm handling for sweep and threshold."""
    if args.qasm is not None:
        circ = _read_circuit(args.qasm)
        return circ, Path(args.qasm).stem, [circ.n_qubits]
    builder = circuit.FAMILIES[args.family]
    if args.n is not None:
        ns = args.n
    else:
        ns = list(range(args.n_min, args.n_max + 1))
    return builder, args.family, ns


def cmd_sweep(args) -> int:
    family, name, ns = _resolve_family(args)
    cfg = estimators.EstimatorConfig(p_ent=args.p_ent, qva_w=args.w)
    result = analysis.sweep_grid(family, ns, args.p1, args.p2, cfg, family_name=name)
    buf = io.StringIO()
    result.write_csv(buf)
    _write_output(buf.getvalue(), args.out)
    return 0


def cmd_threshold(args) -> int:
    family, name, ns = _resolve_family(args)
    cfg = estimators.EstimatorConfig(p_ent=args.p_ent, qva_w=args.w)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["circuit_family", "n_qubits", "p1", "target", "p2",
                     "feasible", "reason"])
    for n in sorted(ns):
        for p1 in args.p1:
            res = analysis.threshold_p2(family, n, p1, args.target, cfg)
            writer.writerow([
                name, n, repr(p1), repr(args.target),
                "" if res.p2 is None else repr(res.p2),
                str(res.feasible).lower(), res.reason or "",
            ])
    _write_output(buf.getvalue(), args.out)
    return 0


def cmd_metrics(args) -> int:
    with open(args.records, "r", encoding="utf-8", newline="") as fh:
        groups = analysis.read_records_csv(fh)
    report = {}
    for method in sorted(groups):
        report[method] = analysis.compute_metrics(groups[method]).as_dict()
    _write_output(json.dumps(report, indent=2), args.out)
    return 0


def cmd_generate(args) -> int:
    if args.family == "random":
        if args.seed is None:
            raise InputError("--seed is required for random circuit generation")
        if args.gates is None:
            raise InputError("--gates is required for random circuit generation")
        circ = circuit.generate_random(args.n, args.gates, seed=args.seed)
    else:
        circ = circuit.FAMILIES[args.family](args.n)
    if args.mirror:
        circ = circuit.mirror(circ)
    if args.measure:
        circ = circuit.Circuit(
            n_qubits=circ.n_qubits,
            gates=circ.gates,
            measured_qubits=frozenset(range(circ.n_qubits)),
            barriers=circ.barriers,
        )
    _write_output(emit_qasm(circ), args.out)
    return 0


def _add_estimator_flags(p: argparse.ArgumentParser, coherence_flag: bool = True):
    p.add_argument("--p-ent", type=float, default=0.5, dest="p_ent",
                   help="entanglement hyperparameter in [0,1] (default 0.5)")
    p.add_argument("--w", type=float, default=0.5,
                   help="QVA cross-error weight in [0,1] (default 0.5)")
    if coherence_flag:
        p.add_argument("--coherence", action="store_true",
                       help="apply per-layer T1/T2 decay factors")
        p.add_argument("--measurement", action="store_true",
                       help="multiply in readout fidelities of measured qubits")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="fidelis",
                             description="Quantum circuit fidelity prediction "
                                         "under depolarizing noise")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="analytic fidelity estimate for a QASM circuit")
    p.add_argument("qasm", help="OpenQASM 2.0 file")
    p.add_argument("calibration", help="calibration JSON file")
    p.add_argument("--method", choices=sorted(_ESTIMATORS), default="proposed")
    _add_estimator_flags(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="exact density-matrix fidelity (small circuits)")
    p.add_argument("qasm")
    p.add_argument("calibration")
    p.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_QUBIT_CAP,
                   dest="oracle_cap", help="qubit cap for the simulator (default 10)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="all estimators (with/without coherence) on one circuit")
    p.add_argument("qasm")
    p.add_argument("calibration")
    p.add_argument("--with-oracle", action="store_true", dest="with_oracle",
                   help="also simulate exactly and fill the measured column")
    p.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_QUBIT_CAP,
                   dest="oracle_cap")
    p.add_argument("--p-ent", type=float, default=0.5, dest="p_ent")
    p.add_argument("--w", type=float, default=0.5)
    p.add_argument("--measurement", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    for cmd, func, extra in (("sweep", cmd_sweep, "p2"), ("threshold", cmd_threshold, "target")):
        p = sub.add_parser(cmd, help=f"{cmd} study over synthetic uniform calibrations")
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--family", choices=sorted(circuit.FAMILIES))
        group.add_argument("--qasm", help="fixed circuit from a QASM file")
        p.add_argument("--n", type=int, nargs="+",
                       help="explicit qubit counts (family mode)")
        p.add_argument("--n-min", type=int, default=2, dest="n_min")
        p.add_argument("--n-max", type=int, default=8, dest="n_max")
        p.add_argument("--p1", type=float, nargs="+", required=True,
                       help="single-qubit depolarization values")
        if extra == "p2":
            p.add_argument("--p2", type=float, nargs="+", required=True,
                           help="two-qubit depolarization values")
        else:
            p.add_argument("--target", type=float, default=0.99,
                           help="fidelity target (default 0.99)")
        p.add_argument("--p-ent", type=float, default=0.5, dest="p_ent")
        p.add_argument("--w", type=float, default=0.5)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("metrics", help="regression metrics from a records CSV")
    p.add_argument("records", help="CSV with circuit_id,n_qubits,n_gates,method,"
                                   "predicted,measured columns")
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("generate", help="emit QASM for a benchmark circuit")
    p.add_argument("--family", choices=sorted(circuit.FAMILIES) + ["random"],
                   required=True)
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--gates", type=int, help="gate count (random family)")
    p.add_argument("--seed", type=int, help="RNG seed (required for random)")
    p.add_argument("--mirror", action="store_true",
                   help="concatenate the circuit with its inverse")
    p.add_argument("--measure", action="store_true", help="measure all qubits")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("FIDELIS_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UnsupportedFeatureError as exc:
        print(f"fidelis: unsupported: {exc}", file=sys.stderr)
        return 2
    except (FidelisError, OSError, json.JSONDecodeError) as exc:
        print(f"fidelis: error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()

"""Device calibration snapshot: loading, validation, and gate lookup.

A :class:`CalibrationData` holds per-qubit coherence/readout records and
per-gate fidelity/duration records, optionally backed by uniform defaults
for synthetic studies. Gate fidelities convert to depolarization factors
via ``p = d * (F_g - 1) / (1 - d)``, the unique ``p`` whose single-channel
fidelity loss equals the calibrated gate fidelity.

Units: T1/T2 are given in microseconds (as vendors report them), durations
in nanoseconds. Internally everything time-like is consumed in nanoseconds.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .circuit import GATE_SIGNATURES, Gate
from .errors import CalibrationError, MissingCalibrationError

_US_TO_NS = 1000.0


def depolarization_from_fidelity(f_gate: float, d: int) -> float:
    """Depolarization probability equivalent to a calibrated gate fidelity.

    ``p = d * (f_gate - 1) / (1 - d)``; applying one depolarizing channel
    with this ``p`` to a fresh ``d``-dimensional state reproduces exactly
    the fidelity ``f_gate``. Fidelities below the maximally mixed floor
    ``1/d`` (or above 1) have no valid ``p`` and are rejected.
    """
    if d not in (2, 4):
        raise CalibrationError(f"dimension must be 2 or 4, got {d}")
    p = d * (f_gate - 1.0) / (1.0 - d)
    if not 0.0 <= p <= 1.0:
        raise CalibrationError(
            f"gate fidelity {f_gate} outside ({1.0 / d}, 1], no valid depolarization"
        )
    return p


@dataclass(frozen=True)
class QubitCalibration:
    """Per-qubit record: T1/T2 in microseconds, readout fidelity in [0, 1]."""

    id: int
    t1_us: float
    t2_us: float
    readout_fidelity: float

    def __post_init__(self):
        if not self.t1_us > 0:
            raise CalibrationError(f"qubit {self.id}: t1_us must be > 0, got {self.t1_us}")
        if not self.t2_us > 0:
            raise CalibrationError(f"qubit {self.id}: t2_us must be > 0, got {self.t2_us}")
        if not 0.0 <= self.readout_fidelity <= 1.0:
            raise CalibrationError(
                f"qubit {self.id}: readout_fidelity must be in [0, 1], "
                f"got {self.readout_fidelity}"
            )
        if self.t2_us > 2.0 * self.t1_us:
            warnings.warn(
                f"qubit {self.id}: t2 ({self.t2_us} us) exceeds 2*t1 "
                f"({2 * self.t1_us} us), which is unphysical",
                stacklevel=2,
            )

    @property
    def t1_ns(self) -> float:
        return self.t1_us * _US_TO_NS

    @property
    def t2_ns(self) -> float:
        return self.t2_us * _US_TO_NS


@dataclass(frozen=True)
class GateCalibration:
    """Per-gate record: fidelity in (0, 1] and duration in nanoseconds."""

    kind: str
    qubits: tuple[int, ...]
    fidelity: float
    duration_ns: float

    def __post_init__(self):
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))
        sig = GATE_SIGNATURES.get(self.kind)
        if sig is None:
            raise CalibrationError(f"unknown gate kind in calibration: {self.kind!r}")
        if len(self.qubits) != sig[0]:
            raise CalibrationError(
                f"{self.kind} expects {sig[0]} qubit(s), calibration names {self.qubits}"
            )
        if not 0.0 < self.fidelity <= 1.0:
            raise CalibrationError(
                f"{self.kind}{self.qubits}: fidelity must be in (0, 1], got {self.fidelity}"
            )
        if self.duration_ns < 0:
            raise CalibrationError(
                f"{self.kind}{self.qubits}: duration_ns must be >= 0, got {self.duration_ns}"
            )


@dataclass(frozen=True)
class CalibrationDefaults:
    """Uniform fallback: depolarization p1/p2 and durations by gate arity."""

    p1: float
    p2: float
    duration1_ns: float = 0.0
    duration2_ns: float = 0.0

    def __post_init__(self):
        for name in ("p1", "p2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise CalibrationError(f"defaults.{name} must be in [0, 1], got {v}")
        for name in ("duration1_ns", "duration2_ns"):
            if getattr(self, name) < 0:
                raise CalibrationError(f"defaults.{name} must be >= 0")


@dataclass(frozen=True, eq=False)
class CalibrationData:
    """Immutable device snapshot; lookups are pure and thread-safe."""

    qubits: tuple[QubitCalibration, ...] = ()
    gates: tuple[GateCalibration, ...] = ()
    defaults: CalibrationDefaults | None = None

    def __post_init__(self):
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        qubit_map: dict[int, QubitCalibration] = {}
        for q in self.qubits:
            if q.id in qubit_map:
                raise CalibrationError(f"duplicate calibration for qubit {q.id}")
            qubit_map[q.id] = q
        gate_map: dict[tuple[str, tuple[int, ...]], tuple[float, float]] = {}
        for g in self.gates:
            for q in g.qubits:
                if q not in qubit_map:
                    raise CalibrationError(
                        f"gate {g.kind}{g.qubits} references qubit {q} "
                        "with no qubit calibration"
                    )
            key = (g.kind, g.qubits)
            rkey = (g.kind, g.qubits[::-1])
            if key in gate_map or (len(g.qubits) == 2 and rkey in gate_map):
                raise CalibrationError(f"duplicate calibration for {g.kind}{g.qubits}")
            p = depolarization_from_fidelity(g.fidelity, 2 ** len(g.qubits))
            gate_map[key] = (p, g.duration_ns)
        object.__setattr__(self, "_qubit_map", qubit_map)
        object.__setattr__(self, "_gate_map", gate_map)

    @classmethod
    def uniform(
        cls,
        p1: float,
        p2: float,
        duration1_ns: float = 0.0,
        duration2_ns: float = 0.0,
    ) -> "CalibrationData":
        """Defaults-only snapshot for synthetic sweeps and theory studies."""
        return cls(defaults=CalibrationDefaults(p1, p2, duration1_ns, duration2_ns))

    def lookup(self, gate: Gate) -> tuple[float, float]:
        """Resolve a gate to ``(depolarization p, duration_ns)``.

        Two-qubit entries match in either qubit order; gates absent from the
        records fall back to the defaults for their arity.
        """
        gm = self._gate_map
        hit = gm.get((gate.kind, gate.qubits))
        if hit is not None:
            return hit
        if len(gate.qubits) == 2:
            hit = gm.get((gate.kind, gate.qubits[::-1]))
            if hit is not None:
                return hit
        d = self.defaults
        if d is not None:
            if len(gate.qubits) == 1:
                return d.p1, d.duration1_ns
            return d.p2, d.duration2_ns
        raise MissingCalibrationError(
            f"no calibration for gate {gate.kind} on qubits {gate.qubits}"
        )

    def qubit(self, qubit_id: int) -> QubitCalibration:
        try:
            return self._qubit_map[qubit_id]
        except KeyError:
            raise MissingCalibrationError(
                f"no calibration record for qubit {qubit_id}"
            ) from None


def lookup_gate(calib: CalibrationData, gate: Gate) -> tuple[float, float]:
    """Module-level alias for :meth:`CalibrationData.lookup`."""
    return calib.lookup(gate)


def _require(doc: dict, key: str, ctx: str) -> Any:
    if key not in doc:
        raise CalibrationError(f"{ctx}.{key}: missing required field")
    return doc[key]


def _number(value: Any, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CalibrationError(f"{ctx}: expected a number, got {value!r}")
    return float(value)


def load_calibration(source: Any) -> CalibrationData:
    """Load and validate a calibration document.

    ``source`` may be a parsed dict, a JSON file path, or an open file
    object. Schema errors name the offending field path; invariant
    violations report the value. A t2 > 2*t1 record emits a warning but
    does not fail.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        doc = source
    if not isinstance(doc, dict):
        raise CalibrationError("calibration document must be a JSON object")

    qubits = []
    raw_qubits = _require(doc, "qubits", "calibration")
    if not isinstance(raw_qubits, list):
        raise CalibrationError("qubits: expected a list")
    for i, rq in enumerate(raw_qubits):
        ctx = f"qubits[{i}]"
        if not isinstance(rq, dict):
            raise CalibrationError(f"{ctx}: expected an object")
        qid = _require(rq, "id", ctx)
        if isinstance(qid, bool) or not isinstance(qid, int):
            raise CalibrationError(f"{ctx}.id: expected an integer, got {qid!r}")
        qubits.append(QubitCalibration(
            id=qid,
            t1_us=_number(_require(rq, "t1_us", ctx), f"{ctx}.t1_us"),
            t2_us=_number(_require(rq, "t2_us", ctx), f"{ctx}.t2_us"),
            readout_fidelity=_number(
                _require(rq, "readout_fidelity", ctx), f"{ctx}.readout_fidelity"
            ),
        ))

    gates = []
    raw_gates = _require(doc, "gates", "calibration")
    if not isinstance(raw_gates, list):
        raise CalibrationError("gates: expected a list")
    for i, rg in enumerate(raw_gates):
        ctx = f"gates[{i}]"
        if not isinstance(rg, dict):
            raise CalibrationError(f"{ctx}: expected an object")
        kind = _require(rg, "kind", ctx)
        if not isinstance(kind, str):
            raise CalibrationError(f"{ctx}.kind: expected a string")
        raw_q = _require(rg, "qubits", ctx)
        if (not isinstance(raw_q, list)
                or not all(isinstance(q, int) and not isinstance(q, bool) for q in raw_q)):
            raise CalibrationError(f"{ctx}.qubits: expected a list of integers")
        fidelity = _number(_require(rg, "fidelity", ctx), f"{ctx}.fidelity")
        if not 0.0 < fidelity <= 1.0:
            raise CalibrationError(f"{ctx}.fidelity: must be in (0, 1], got {fidelity}")
        gates.append(GateCalibration(
            kind=kind.upper(),
            qubits=tuple(raw_q),
            fidelity=fidelity,
            duration_ns=_number(_require(rg, "duration_ns", ctx), f"{ctx}.duration_ns"),
        ))

    defaults = None
    if "defaults" in doc:
        rd = doc["defaults"]
        if not isinstance(rd, dict):
            raise CalibrationError("defaults: expected an object")
        defaults = CalibrationDefaults(
            p1=_number(_require(rd, "p1", "defaults"), "defaults.p1"),
            p2=_number(_require(rd, "p2", "defaults"), "defaults.p2"),
            duration1_ns=_number(rd.get("duration1_ns", 0.0), "defaults.duration1_ns"),
            duration2_ns=_number(rd.get("duration2_ns", 0.0), "defaults.duration2_ns"),
        )

    return CalibrationData(qubits=tuple(qubits), gates=tuple(gates), defaults=defaults)

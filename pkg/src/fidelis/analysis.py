"""Regression metrics and design-space exploration over (p1, p2) grids.

Metrics quantify how well predicted fidelities track measured success
rates: MAE, MSE, the coefficient of determination R2 (against the mean of
the measured values, so it can go negative), and Pearson correlation.
Sweeps evaluate the per-qubit estimator over uniform synthetic
calibrations; the threshold search bisects for the largest two-qubit
depolarization still meeting a fidelity target.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .calibration import CalibrationData
from .circuit import Circuit
from .errors import InputError
from .estimators import EstimatorConfig, estimate_proposed


@dataclass(frozen=True)
class PredictionRecord:
    """One circuit's predicted fidelity vs measured success rate."""

    circuit_id: str
    n_qubits: int
    n_gates: int
    predicted: float
    measured: float

    def __post_init__(self):
        if not 0.0 <= self.predicted <= 1.0:
            raise InputError(f"predicted must be in [0, 1], got {self.predicted}")
        if not 0.0 <= self.measured <= 1.0:
            raise InputError(f"measured must be in [0, 1], got {self.measured}")


@dataclass(frozen=True)
class MetricsReport:
    """Regression metrics; r2/pearson are None when their variance is degenerate."""

    mae: float
    mse: float
    r2: float | None
    pearson: float | None
    n: int

    def as_dict(self) -> dict:
        return {"mae": self.mae, "mse": self.mse, "r2": self.r2,
                "pearson": self.pearson, "n": self.n}


def _pairs(records: Iterable) -> tuple[list[float], list[float]]:
    pred, meas = [], []
    for r in records:
        if isinstance(r, PredictionRecord):
            pred.append(r.predicted)
            meas.append(r.measured)
        else:
            p, m = r
            pred.append(float(p))
            meas.append(float(m))
    return pred, meas


def compute_metrics(records: Iterable) -> MetricsReport:
    """MAE/MSE/R2/Pearson of predictions against measurements.

    Accepts :class:`PredictionRecord` objects or plain ``(predicted,
    measured)`` pairs. R2 is undefined (None) when the measured values are
    all identical; Pearson additionally requires non-constant predictions.
    MAE and MSE are always reported.
    """
    pred, meas = _pairs(records)
    n = len(pred)
    if n < 2:
        raise InputError(f"need at least 2 records to compute metrics, got {n}")
    errors = [p - m for p, m in zip(pred, meas)]
    mae = sum(abs(e) for e in errors) / n
    mse = sum(e * e for e in errors) / n

    mean_meas = sum(meas) / n
    ss_tot = sum((m - mean_meas) ** 2 for m in meas)
    r2 = None if ss_tot == 0.0 else 1.0 - (mse * n) / ss_tot

    mean_pred = sum(pred) / n
    ss_pred = sum((p - mean_pred) ** 2 for p in pred)
    if ss_pred == 0.0 or ss_tot == 0.0:
        pearson = None
    else:
        cov = sum((p - mean_pred) * (m - mean_meas) for p, m in zip(pred, meas))
        pearson = cov / math.sqrt(ss_pred * ss_tot)
    return MetricsReport(mae=mae, mse=mse, r2=r2, pearson=pearson, n=n)


@dataclass(frozen=True)
class SweepPoint:
    circuit_family: str
    n_qubits: int
    p1: float
    p2: float
    fidelity: float


@dataclass(frozen=True)
class SweepResult:
    """Grid of estimator evaluations, row-order stable: (family, n, p1, p2)."""

    rows: tuple[SweepPoint, ...]

    def write_csv(self, fileobj) -> None:
        writer = csv.writer(fileobj)
        writer.writerow(["circuit_family", "n_qubits", "p1", "p2", "fidelity"])
        for r in self.rows:
            writer.writerow([r.circuit_family, r.n_qubits, repr(r.p1), repr(r.p2),
                             repr(r.fidelity)])


def _as_family(family) -> tuple[Callable[[int], Circuit], str]:
    if isinstance(family, Circuit):
        return (lambda _n: family), "circuit"
    return family, getattr(family, "__name__", "family")


def sweep_grid(
    family,
    n_values: Sequence[int],
    p1_values: Sequence[float],
    p2_values: Sequence[float],
    cfg: EstimatorConfig | None = None,
    family_name: str | None = None,
) -> SweepResult:
    """Evaluate the per-qubit estimator over a (n, p1, p2) grid.

    ``family`` is either a circuit generator (n -> Circuit) or a fixed
    Circuit (then ``n_values`` should hold its qubit count). Each grid cell
    uses a uniform synthetic calibration with the given depolarizations.
    Coherence is excluded by construction: sweeps study operational errors
    only.
    """
    cfg = cfg or EstimatorConfig()
    if cfg.include_coherence:
        raise InputError("sweep_grid studies gate errors only; disable coherence")
    build, default_name = _as_family(family)
    name = family_name or default_name
    rows = []
    for n in sorted(n_values):
        circ = build(n)
        for p1 in sorted(p1_values):
            for p2 in sorted(p2_values):
                calib = CalibrationData.uniform(p1, p2)
                est = estimate_proposed(circ, calib, cfg)
                rows.append(SweepPoint(name, circ.n_qubits, p1, p2, est.value))
    return SweepResult(tuple(rows))


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of the required-p2 search; ``p2`` is None when infeasible."""

    p2: float | None
    feasible: bool
    reason: str | None = None


P2_BRACKET_MAX = 0.5


def threshold_p2(
    family,
    n: int,
    p1: float,
    target: float,
    cfg: EstimatorConfig | None = None,
    f_tol: float = 1e-6,
) -> ThresholdResult:
    """Largest two-qubit depolarization p2 keeping fidelity at the target.

    Bisects p2 in [0, 0.5] (beyond 0.5 the equivalent two-qubit gate
    fidelity drops under 0.625, far outside any threshold study) until the
    bracket is relatively converged to 1e-6 and the fidelity sits within
    ``f_tol`` of the target. Infeasible when the target is unreachable even
    at p2=0, or when the solution falls below p1 (the search termination
    rule for design sweeps).
    """
    if not 0.0 < target <= 1.0:
        raise InputError(f"target fidelity must be in (0, 1], got {target}")
    cfg = cfg or EstimatorConfig()
    if cfg.include_coherence:
        raise InputError("threshold_p2 studies gate errors only; disable coherence")
    build, _ = _as_family(family)
    circ = build(n)

    def estimate(p2: float) -> float:
        calib = CalibrationData.uniform(p1, p2)
        return estimate_proposed(circ, calib, cfg).value

    f_at_zero = estimate(0.0)
    if f_at_zero < target:
        return ThresholdResult(
            p2=None, feasible=False,
            reason=f"target {target} unreachable even at p2=0 "
                   f"(fidelity {f_at_zero:.6g} with p1={p1})",
        )
    if estimate(P2_BRACKET_MAX) >= target:
        return ThresholdResult(p2=P2_BRACKET_MAX, feasible=True)

    lo, hi = 0.0, P2_BRACKET_MAX
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = estimate(mid)
        if f_mid >= target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-6 * hi and abs(f_mid - target) <= f_tol:
            break
    if mid < p1:
        return ThresholdResult(
            p2=None, feasible=False,
            reason=f"required p2 {mid:.6g} falls below p1 {p1:.6g}",
        )
    return ThresholdResult(p2=mid, feasible=True)


def write_records_csv(groups: dict[str, Iterable[PredictionRecord]], fileobj) -> None:
    """Write per-method prediction records in the standard 6-column schema."""
    writer = csv.writer(fileobj)
    writer.writerow(["circuit_id", "n_qubits", "n_gates", "method",
                     "predicted", "measured"])
    for method, records in groups.items():
        for r in records:
            writer.writerow([r.circuit_id, r.n_qubits, r.n_gates, method,
                             repr(r.predicted), repr(r.measured)])


def read_records_csv(fileobj) -> dict[str, list[PredictionRecord]]:
    """Read prediction records grouped by the ``method`` column.

    Raises :class:`InputError` naming the data row number (1-based, header
    excluded) for any malformed row.
    """
    reader = csv.DictReader(fileobj)
    required = {"circuit_id", "n_qubits", "n_gates", "method", "predicted", "measured"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        missing = sorted(required - set(reader.fieldnames or ()))
        raise InputError(f"records CSV is missing columns: {', '.join(missing)}")
    groups: dict[str, list[PredictionRecord]] = {}
    for i, row in enumerate(reader, start=1):
        try:
            rec = PredictionRecord(
                circuit_id=row["circuit_id"],
                n_qubits=int(row["n_qubits"]),
                n_gates=int(row["n_gates"]),
                predicted=float(row["predicted"]),
                measured=float(row["measured"]),
            )
        except (TypeError, ValueError, InputError) as exc:
            raise InputError(f"records CSV row {i}: {exc}") from None
        groups.setdefault(row["method"], []).append(rec)
    return groups

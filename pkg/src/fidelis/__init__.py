"""Analytic fidelity prediction for quantum circuits under depolarizing noise.

The package pairs a linear-time, calibration-driven fidelity estimator
(per-qubit depolarization tracking, with ESP and QVA baselines) with an
exact density-matrix oracle for validation, plus OpenQASM 2.0 ingestion,
regression metrics, and (p1, p2) design-space exploration tools.
"""

from .analysis import (
    MetricsReport,
    PredictionRecord,
    SweepPoint,
    SweepResult,
    ThresholdResult,
    compute_metrics,
    sweep_grid,
    threshold_p2,
)
from .calibration import (
    CalibrationData,
    CalibrationDefaults,
    GateCalibration,
    QubitCalibration,
    depolarization_from_fidelity,
    load_calibration,
    lookup_gate,
)
from .circuit import (
    Circuit,
    Gate,
    Layer,
    generate_ghz,
    generate_qft,
    generate_random,
    invert,
    mirror,
    schedule_layers,
)
from .errors import (
    CalibrationError,
    FidelisError,
    InputError,
    MissingCalibrationError,
    QasmSyntaxError,
    QubitIndexError,
    SimulationSizeError,
    UnsupportedFeatureError,
    UnsupportedGateError,
)
from .estimators import (
    EstimatorConfig,
    FidelityEstimate,
    estimate_bounds_width,
    estimate_esp,
    estimate_proposed,
    estimate_qva,
)
from .oracle import (
    DensityMatrix,
    PureState,
    apply_depolarizing,
    apply_gate,
    fidelity_pure_mixed,
    simulate_ideal,
    simulate_noisy,
)
from .qasm import emit_qasm, parse_qasm
from .theory import (
    DepolParams,
    coherence_factor,
    entangled_fidelity_bounds,
    eta,
    fidelity_after_n,
    fidelity_step,
)

__version__ = "0.1.0"

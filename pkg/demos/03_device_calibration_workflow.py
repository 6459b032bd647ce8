"""End-to-end device workflow: QASM in, calibrated fidelity predictions out.

Mirrors the hardware-study pipeline: load a device calibration snapshot,
build a mirrored benchmark circuit, and compare all estimators with and
without coherence (T1/T2) scaling and readout terms. Writes nothing;
everything prints.
"""

from pathlib import Path

from fidelis import (
    Circuit,
    EstimatorConfig,
    emit_qasm,
    estimate_esp,
    estimate_proposed,
    estimate_qva,
    fidelity_pure_mixed,
    generate_ghz,
    load_calibration,
    mirror,
    parse_qasm,
    schedule_layers,
    simulate_ideal,
    simulate_noisy,
)

DATA = Path(__file__).parent / "data"

calib = load_calibration(DATA / "sample_device.json")
print(f"device snapshot: {len(calib.qubits)} qubits, {len(calib.gates)} gate records")

# Mirrored GHZ-5: ideal outcome is all zeros, so hardware success rate would
# be directly comparable with these predictions.
base = mirror(generate_ghz(5))
circ = Circuit(base.n_qubits, base.gates,
               measured_qubits=frozenset(range(5)), barriers=base.barriers)
qasm_text = emit_qasm(circ)
circ = parse_qasm(qasm_text)  # round-trips exactly
print(f"benchmark: mirrored GHZ-5, {circ.n_gates} gates, "
      f"measuring {sorted(circ.measured_qubits)}")

layers = schedule_layers(circ, calib)
total_ns = sum(layer.duration for layer in layers)
print(f"schedule: {len(layers)} layers, estimated execution {total_ns:.0f} ns")

print()
print(f"{'method':<14} {'gate errors':>11} {'+T1/T2':>9} {'+readout':>9}")
for fn in (estimate_proposed, estimate_esp, estimate_qva):
    plain = fn(circ, calib, EstimatorConfig())
    coh = fn(circ, calib, EstimatorConfig(include_coherence=True))
    full = fn(circ, calib, EstimatorConfig(include_coherence=True,
                                           include_measurement=True))
    print(f"{plain.method:<14} {plain.value:>11.5f} {coh.value:>9.5f} {full.value:>9.5f}")

oracle = fidelity_pure_mixed(simulate_ideal(circ), simulate_noisy(circ, calib))
print()
print(f"exact gate-error-only fidelity (density-matrix oracle): {oracle:.5f}")
prop = estimate_proposed(circ, calib)
print(f"proposed p_ent interval: [{prop.lower:.5f}, {prop.upper:.5f}] "
      f"-> oracle inside: {prop.lower <= oracle <= prop.upper}")

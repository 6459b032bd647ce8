"""Design-space exploration: what gate errors does a target fidelity demand?

Two studies over synthetic uniform calibrations (coherence excluded, as
these are operational-error design questions):
  - a (p1, p2) sweep grid for the QFT, written as contour-ready CSV,
  - the required two-qubit error rate p2 to keep fidelity above 0.99 as
    circuits grow, for several fixed p1 values.

CSVs land next to this script in demos/output/.
"""

from pathlib import Path

import numpy as np

from fidelis import EstimatorConfig, generate_ghz, generate_qft, sweep_grid, threshold_p2

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

print("=== Sweep: QFT-8 fidelity over a p1 x p2 grid ===")
p1_values = [0.0] + list(np.geomspace(1e-7, 1e-5, 5))
p2_values = [0.0] + list(np.geomspace(1e-6, 1e-4, 5))
result = sweep_grid(generate_qft, [8], p1_values, p2_values, family_name="qft")
path = OUT / "qft8_sweep.csv"
with open(path, "w", newline="") as fh:
    result.write_csv(fh)
print(f"wrote {len(result.rows)} rows to {path}")
corner = {(r.p1, r.p2): r.fidelity for r in result.rows}
print(f"   fidelity at (0, 0): {corner[(0.0, 0.0)]:.6f}")
print(f"   fidelity at (1e-5, 1e-4): {corner[(1e-5, 1e-4)]:.6f}")

print()
print("=== Threshold: required p2 for fidelity > 0.99 ===")
ns = [2, 4, 8, 16, 32, 50]
rows = []
for family, name in ((generate_ghz, "ghz"), (generate_qft, "qft")):
    for p1 in (0.0, 1e-7, 1e-6):
        for n in ns:
            res = threshold_p2(family, n, p1, 0.99, EstimatorConfig())
            rows.append((name, n, p1, res.p2 if res.feasible else None))

path = OUT / "threshold_p2.csv"
with open(path, "w") as fh:
    fh.write("circuit_family,n_qubits,p1,required_p2\n")
    for name, n, p1, p2 in rows:
        fh.write(f"{name},{n},{p1!r},{'' if p2 is None else repr(p2)}\n")
print(f"wrote {len(rows)} rows to {path}")

print(f"\n{'family':<6} {'p1':>8} | " + " ".join(f"n={n:<8}" for n in ns))
for name in ("ghz", "qft"):
    for p1 in (0.0, 1e-7, 1e-6):
        vals = [p2 for fam, n, q1, p2 in rows if fam == name and q1 == p1]
        cells = " ".join("infeasible" if v is None else f"{v:<10.2e}" for v in vals)
        print(f"{name:<6} {p1:>8.0e} | {cells}")
print("\nrequired p2 tightens as circuits grow; the study stops once it"
      " would fall below p1.")

"""Closed-form fidelity under repeated depolarizing channels, checked live
against the exact density-matrix simulator.

Walks through the package's theory layer:
  - fidelity decay toward the maximally mixed floor 1/d,
  - the single-step recurrence,
  - the eta correction that splits a two-qubit channel across both qubits,
  - the entanglement bounds for partial depolarization.
"""

import math

import numpy as np

from fidelis import (
    PureState,
    apply_depolarizing,
    entangled_fidelity_bounds,
    eta,
    fidelity_after_n,
    fidelity_pure_mixed,
    fidelity_step,
)

rng = np.random.default_rng(1)

print("=== Repeated depolarization of a single qubit (p = 0.02) ===")
print(f"{'n':>5} {'closed form':>12} {'exact sim':>12} {'|diff|':>9}")
amps = rng.normal(size=2) + 1j * rng.normal(size=2)
psi = PureState(amps / np.linalg.norm(amps))
state = psi.density_matrix()
for n in range(0, 201):
    if n in (0, 1, 5, 20, 50, 100, 200):
        closed = fidelity_after_n(0.02, n, 2)
        exact = fidelity_pure_mixed(psi, state)
        print(f"{n:>5} {closed:>12.8f} {exact:>12.8f} {abs(closed - exact):>9.1e}")
    state = apply_depolarizing(state, [0], 0.02)
print(f"floor: 1/d = {1 / 2}")

print()
print("=== Recurrence form reproduces the closed form ===")
f = 1.0
for n in range(1, 6):
    f = fidelity_step(f, 0.02, 2)
    print(f"step {n}: {f:.8f}   closed: {fidelity_after_n(0.02, n, 2):.8f}")

print()
print("=== Two-qubit channel split: the eta correction ===")
p = 4 * (1 - 0.995) / 3  # depolarization equivalent to a 99.5% CX
e = eta(1.0, 1.0, p, 4)
factor = math.sqrt(1 - p) + e
print(f"gate fidelity 0.995 -> p = {p:.6f}, eta = {e:.6e}")
print(f"per-qubit factor {factor:.7f}; product {factor * factor:.7f} (joint 0.995)")

print()
print("=== Bounds for depolarizing one qubit of an entangled pair ===")
bell = np.zeros(4, dtype=complex)
bell[0] = bell[3] = 1 / math.sqrt(2)
psi_bell = PureState(bell)
prod = PureState(np.kron(psi.amplitudes, [1.0, 0.0]))
for p in (0.001, 0.01, 0.1):
    lo, hi = entangled_fidelity_bounds(p, 2)
    f_bell = fidelity_pure_mixed(psi_bell, apply_depolarizing(psi_bell.density_matrix(), [0], p))
    f_prod = fidelity_pure_mixed(prod, apply_depolarizing(prod.density_matrix(), [0], p))
    print(f"p={p:<6}: bounds [{lo:.5f}, {hi:.5f}]  "
          f"product state {f_prod:.5f} (at upper)   bell {f_bell:.5f} (inside)")

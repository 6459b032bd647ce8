"""Independent brute-force references used by the test suite.

Everything here is deliberately naive and written against textbook
definitions (kron embeddings, Pauli twirls, stdlib statistics) so it shares
no code paths with the package implementations it checks.
"""

from __future__ import annotations

import statistics
from itertools import product

import numpy as np

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.diag([1, -1]).astype(complex)
PAULIS = (_I2, _X, _Y, _Z)


def embed_single(u: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """kron-embed a 2x2 matrix on one qubit (qubit q = bit q of the index)."""
    full = np.array([[1.0 + 0j]])
    for ax in range(n):
        q = n - 1 - ax
        full = np.kron(full, u if q == qubit else _I2)
    return full


def embed_two(u4: np.ndarray, qubits: tuple[int, int], n: int) -> np.ndarray:
    """Basis-by-basis embedding of a 4x4 matrix on an arbitrary qubit pair."""
    d = 2 ** n
    q0, q1 = qubits
    out = np.zeros((d, d), dtype=complex)
    for col in range(d):
        src = (((col >> q0) & 1) << 1) | ((col >> q1) & 1)
        base = col & ~(1 << q0) & ~(1 << q1)
        for loc in range(4):
            amp = u4[loc, src]
            if amp != 0:
                row = base | (((loc >> 1) & 1) << q0) | ((loc & 1) << q1)
                out[row, col] += amp
    return out


def twirl_depolarize(rho: np.ndarray, qubits, p: float, n: int) -> np.ndarray:
    """Depolarizing channel as a uniform Pauli mixture (the twirl identity)."""
    k = len(qubits)
    acc = np.zeros_like(rho)
    for combo in product(PAULIS, repeat=k):
        full = np.array([[1.0 + 0j]])
        by_qubit = dict(zip(qubits, combo))
        for ax in range(n):
            q = n - 1 - ax
            full = np.kron(full, by_qubit.get(q, _I2))
        acc += full @ rho @ full.conj().T
    return (1.0 - p) * rho + (p / 4 ** k) * acc


def random_density_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    d = 2 ** n
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return m / np.trace(m)


def random_pure_state(n: int, rng: np.random.Generator) -> np.ndarray:
    d = 2 ** n
    a = rng.normal(size=d) + 1j * rng.normal(size=d)
    return a / np.linalg.norm(a)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def naive_metrics(pred, meas) -> dict:
    """MAE/MSE/R2/Pearson from stdlib statistics, element by element."""
    n = len(pred)
    mae = statistics.fmean(abs(p - m) for p, m in zip(pred, meas))
    mse = statistics.fmean((p - m) ** 2 for p, m in zip(pred, meas))
    mean_meas = statistics.fmean(meas)
    ss_tot = sum((m - mean_meas) ** 2 for m in meas)
    ss_res = sum((m - p) ** 2 for p, m in zip(pred, meas))
    r2 = None if ss_tot == 0 else 1.0 - ss_res / ss_tot
    try:
        pearson = statistics.correlation(list(pred), list(meas))
    except statistics.StatisticsError:
        pearson = None
    return {"mae": mae, "mse": mse, "r2": r2, "pearson": pearson, "n": n}

"""Exact density-matrix simulator with depolarizing-channel injection.

This is the ground truth the analytic estimators are validated against:
deterministic mixed-state evolution (no Monte-Carlo sampling), gates applied
as ``rho -> U rho U^dag`` and noise as the exact k-qubit depolarizing
channel ``rho -> (1-p) rho + (p/d_A)(I_A x tr_A(rho))`` on the gate's
qubits. States are dense ``2^n x 2^n`` complex matrices; the default cap of
10 qubits keeps memory at a few dozen MB.

Qubit convention: qubit ``q`` is bit ``q`` of the basis-state index
(little-endian), so ``|q1=0, q0=1>`` is index 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate
from .errors import InputError, SimulationSizeError, UnsupportedGateError

DEFAULT_QUBIT_CAP = 10

_SQ2 = 1.0 / math.sqrt(2.0)

_FIXED_UNITARIES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(0.25j * np.pi)]], dtype=complex),
    "TDG": np.array([[1, 0], [0, np.exp(-0.25j * np.pi)]], dtype=complex),
    "SX": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
    "SXDG": 0.5 * np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]], dtype=complex),
    # Two-qubit matrices act on |first, second> with the first-listed qubit
    # as the most significant bit; CX is (control, target).
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


def gate_unitary(gate: Gate) -> np.ndarray:
    """The 2x2 or 4x4 unitary for a gate, parameters applied."""
    fixed = _FIXED_UNITARIES.get(gate.kind)
    if fixed is not None:
        return fixed
    if gate.kind == "RX":
        (theta,) = gate.params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if gate.kind == "RY":
        (theta,) = gate.params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if gate.kind == "RZ":
        (theta,) = gate.params
        return np.array(
            [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
        )
    if gate.kind == "U":
        theta, phi, lam = gate.params
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array(
            [
                [c, -np.exp(1j * lam) * s],
                [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
            ],
            dtype=complex,
        )
    if gate.kind == "CP":
        (theta,) = gate.params
        return np.diag([1, 1, 1, np.exp(1j * theta)]).astype(complex)
    raise UnsupportedGateError(f"no unitary defined for gate kind {gate.kind!r}")


@dataclass(frozen=True, eq=False)
class PureState:
    """Statevector with unit 2-norm."""

    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> "PureState":
        amps = np.zeros(2 ** n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``2^n x 2^n`` operator."""

    entries: np.ndarray

    @classmethod
    def zero_state(cls, n_qubits: int) -> "DensityMatrix":
        d = 2 ** n_qubits
        m = np.zeros((d, d), dtype=complex)
        m[0, 0] = 1.0
        return cls(m)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityMatrix":
        return state.density_matrix()

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def validate(self, atol: float = 1e-10) -> None:
        """Check Hermiticity, unit trace, and positive semidefiniteness."""
        m = self.entries
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] & (m.shape[0] - 1):
            raise InputError(f"density matrix must be square 2^n x 2^n, got {m.shape}")
        if not np.allclose(m, m.conj().T, atol=atol):
            raise InputError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > atol:
            raise InputError(f"density matrix trace is {np.trace(m)}, expected 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -atol:
            raise InputError(f"density matrix has negative eigenvalue {eigs.min()}")


# Basis-permutation indices that gather the target qubits' bits into the
# most significant positions, keyed by (n, qubits). gather[new] = old and
# scatter[old] = new; both are reused across gates of a simulation run.
_PERM_CACHE: dict[tuple[int, tuple[int, ...]], tuple[np.ndarray, np.ndarray]] = {}


def _perm_indices(n: int, qubits: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    key = (n, qubits)
    hit = _PERM_CACHE.get(key)
    if hit is not None:
        return hit
    rest = [q for q in range(n - 1, -1, -1) if q not in qubits]
    order = list(qubits) + rest
    idx = np.arange(2 ** n)
    new = np.zeros_like(idx)
    for q in order:
        new = (new << 1) | ((idx >> q) & 1)
    gather = np.argsort(new)
    if len(_PERM_CACHE) > 4096:
        _PERM_CACHE.clear()
    _PERM_CACHE[key] = (gather, new)
    return gather, new


def _blocked(rho: np.ndarray, n: int, qubits: tuple[int, ...]) -> np.ndarray:
    """View of rho permuted to (d_A, d_B, d_A, d_B) with targets leading."""
    d_a = 2 ** len(qubits)
    d_b = rho.shape[0] // d_a
    gather, _ = _perm_indices(n, qubits)
    return rho[np.ix_(gather, gather)].reshape(d_a, d_b, d_a, d_b)


def _unblocked(m: np.ndarray, n: int, qubits: tuple[int, ...]) -> np.ndarray:
    d = 2 ** n
    _, scatter = _perm_indices(n, qubits)
    return m.reshape(d, d)[np.ix_(scatter, scatter)]


def _apply_unitary_blocked(m: np.ndarray, u: np.ndarray) -> np.ndarray:
    """``U rho U^dag`` on the leading block index of ``m[a, b, c, l]``.

    Row-applies U twice with a dagger in between (valid for any matrix, not
    just Hermitian ones): ``U rho U^dag == (U (U rho)^dag)^dag``. This keeps
    both contractions as single large gemms on contiguous data.
    """
    d_a, d_b = m.shape[0], m.shape[1]
    d = d_a * d_b
    out = np.empty((d, d), dtype=complex)
    x = (u @ m.reshape(d_a, -1)).reshape(d, d)
    np.conjugate(x.T, out=out)
    x = (u @ out.reshape(d_a, -1)).reshape(d, d)
    np.conjugate(x.T, out=out)
    return out.reshape(d_a, d_b, d_a, d_b)


def _depolarize_blocked(m: np.ndarray, p: float) -> np.ndarray:
    """Depolarize the leading subsystem: (1-p) m + (p/d_A)(I_A x tr_A m).

    Mutates ``m`` in place; callers pass freshly allocated blocks.
    """
    d_a = m.shape[0]
    traced = np.einsum("abal->bl", m)
    m *= 1.0 - p
    scale = p / d_a
    for a in range(d_a):
        m[a, :, a, :] += scale * traced
    return m


def apply_gate(state: DensityMatrix, gate: Gate) -> DensityMatrix:
    """Unitary evolution ``rho -> U rho U^dag`` on the gate's qubits."""
    n = state.n_qubits
    for q in gate.qubits:
        if q >= n:
            raise InputError(f"gate qubit {q} out of range for {n}-qubit state")
    m = _blocked(state.entries, n, gate.qubits)
    m = _apply_unitary_blocked(m, gate_unitary(gate))
    return DensityMatrix(_unblocked(m, n, gate.qubits))


def apply_depolarizing(
    state: DensityMatrix, qubits: Sequence[int], p: float
) -> DensityMatrix:
    """Depolarize the given 1- or 2-qubit subsystem with probability ``p``."""
    qubits = tuple(qubits)
    if not 1 <= len(qubits) <= 2:
        raise UnsupportedGateError(
            f"depolarizing channel supports 1 or 2 qubits, got {len(qubits)}"
        )
    if len(qubits) == 2 and qubits[0] == qubits[1]:
        raise InputError(f"target qubits must be distinct, got {qubits}")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"depolarization probability must be in [0, 1], got {p}")
    n = state.n_qubits
    for q in qubits:
        if q >= n:
            raise InputError(f"target qubit {q} out of range for {n}-qubit state")
    if p == 0.0:
        return state
    m = _blocked(state.entries, n, qubits)
    m = _depolarize_blocked(m, p)
    return DensityMatrix(_unblocked(m, n, qubits))


def simulate_ideal(circ: Circuit, max_qubits: int = DEFAULT_QUBIT_CAP) -> PureState:
    """Noiseless statevector after all gates; measurements are ignored."""
    if circ.n_qubits > max_qubits:
        raise SimulationSizeError(
            f"{circ.n_qubits} qubits exceeds the simulator cap of {max_qubits}"
        )
    n = circ.n_qubits
    psi = PureState.zero(n).amplitudes.reshape((2,) * n)
    for g in circ.gates:
        k = len(g.qubits)
        u = gate_unitary(g).reshape((2,) * (2 * k))
        axes = [n - 1 - q for q in g.qubits]
        psi = np.tensordot(u, psi, axes=(tuple(range(k, 2 * k)), tuple(axes)))
        psi = np.moveaxis(psi, tuple(range(k)), tuple(axes))
    return PureState(psi.reshape(2 ** n))


def simulate_noisy(
    circ: Circuit, calib, max_qubits: int = DEFAULT_QUBIT_CAP
) -> DensityMatrix:
    """Statistical fault injection: each gate, then its depolarizing channel.

    Starts from ``|0...0><0...0|``; the channel probability for each gate
    comes from the calibration lookup. Returns the final mixed state.
    """
    if circ.n_qubits > max_qubits:
        raise SimulationSizeError(
            f"{circ.n_qubits} qubits exceeds the simulator cap of {max_qubits}"
        )
    n = circ.n_qubits
    d = 2 ** n
    rho = DensityMatrix.zero_state(n).entries
    # Ping-pong workspace: fresh 2^n x 2^n allocations per gate dominate the
    # runtime at 8+ qubits, so every step below writes into reused buffers.
    buf_a = np.empty((d, d), dtype=complex)
    buf_b = np.empty((d, d), dtype=complex)
    for g in circ.gates:
        p, _ = calib.lookup(g)
        u = gate_unitary(g)
        d_a = 2 ** len(g.qubits)
        gather, scatter = _perm_indices(n, g.qubits)
        np.take(rho, gather, axis=0, out=buf_b)
        np.take(buf_b, gather, axis=1, out=buf_a)
        # U rho U^dag as two row-side gemms with a dagger in between
        np.dot(u, buf_a.reshape(d_a, -1), out=buf_b.reshape(d_a, -1))
        np.conjugate(buf_b.T, out=buf_a)
        np.dot(u, buf_a.reshape(d_a, -1), out=buf_b.reshape(d_a, -1))
        np.conjugate(buf_b.T, out=buf_a)
        if p > 0.0:
            _depolarize_blocked(buf_a.reshape(d_a, d // d_a, d_a, d // d_a), p)
        np.take(buf_a, scatter, axis=0, out=buf_b)
        np.take(buf_b, scatter, axis=1, out=rho)
    return DensityMatrix(rho)


def fidelity_pure_mixed(ideal: PureState, state: DensityMatrix) -> float:
    """``<psi| rho |psi>``: fidelity of a mixed state against a pure reference."""
    if ideal.dim != state.dim:
        raise InputError(
            f"dimension mismatch: pure state {ideal.dim}, density matrix {state.dim}"
        )
    psi = ideal.amplitudes
    return float(np.real(np.vdot(psi, state.entries @ psi)))

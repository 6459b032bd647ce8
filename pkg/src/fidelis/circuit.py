"""Quantum circuit intermediate representation.

A :class:`Circuit` is an ordered list of :class:`Gate` operations over a
single register of qubits, plus the set of measured qubits and optional
barrier positions. Everything is immutable after construction, so circuits
can be shared freely across threads. This module also provides greedy
as-soon-as-possible layer scheduling, circuit inversion/mirroring, and
generators for the benchmark families used throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, QubitIndexError, UnsupportedGateError

# Supported gate kinds: canonical name -> (arity, number of angle params).
# SWAP is accepted by the QASM parser but expanded to 3 CX, so it never
# appears in a Circuit.
GATE_SIGNATURES: dict[str, tuple[int, int]] = {
    "I": (1, 0),
    "X": (1, 0),
    "Y": (1, 0),
    "Z": (1, 0),
    "H": (1, 0),
    "S": (1, 0),
    "SDG": (1, 0),
    "T": (1, 0),
    "TDG": (1, 0),
    "SX": (1, 0),
    "SXDG": (1, 0),
    "RX": (1, 1),
    "RY": (1, 1),
    "RZ": (1, 1),
    "U": (1, 3),
    "CX": (2, 0),
    "CZ": (2, 0),
    "CP": (2, 1),
}

_SELF_INVERSE = frozenset({"I", "X", "Y", "Z", "H", "CX", "CZ"})
_INVERSE_KIND = {"S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T", "SX": "SXDG", "SXDG": "SX"}
_NEGATE_PARAMS = frozenset({"RX", "RY", "RZ", "CP"})


def gate_arity(kind: str) -> int:
    """Number of qubits a gate kind acts on."""
    try:
        return GATE_SIGNATURES[kind][0]
    except KeyError:
        raise UnsupportedGateError(f"unsupported gate kind: {kind!r}") from None


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate application: kind, angle parameters, target qubits."""

    kind: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        sig = GATE_SIGNATURES.get(self.kind)
        if sig is None:
            raise UnsupportedGateError(f"unsupported gate kind: {self.kind!r}")
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))
        if not isinstance(self.params, tuple):
            object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        arity, n_params = sig
        if len(self.qubits) != arity:
            raise QubitIndexError(
                f"{self.kind} expects {arity} qubit(s), got {self.qubits}"
            )
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise QubitIndexError(f"{self.kind} qubits must be distinct, got {self.qubits}")
        if len(self.params) != n_params:
            raise InputError(
                f"{self.kind} expects {n_params} parameter(s), got {len(self.params)}"
            )


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``n_qubits`` named 0..n_qubits-1.

    ``barriers`` holds positions k meaning "a barrier sits before
    ``gates[k]``"; barriers constrain layer scheduling but carry no time or
    error. ``measured_qubits`` records terminal measurements.
    """

    n_qubits: int
    gates: tuple[Gate, ...]
    measured_qubits: frozenset[int] = frozenset()
    barriers: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InputError(f"n_qubits must be positive, got {self.n_qubits}")
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        if not isinstance(self.measured_qubits, frozenset):
            object.__setattr__(self, "measured_qubits", frozenset(self.measured_qubits))
        object.__setattr__(self, "barriers", tuple(sorted(set(self.barriers))))
        n = self.n_qubits
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < n:
                    raise QubitIndexError(
                        f"gate {g.kind} on qubit {q} out of range for {n}-qubit circuit"
                    )
        for q in self.measured_qubits:
            if not 0 <= q < n:
                raise QubitIndexError(f"measured qubit {q} out of range")
        if self.barriers and not (0 <= self.barriers[0] and self.barriers[-1] <= len(self.gates)):
            raise InputError(f"barrier position out of range: {self.barriers}")

    @property
    def n_gates(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Layer:
    """Gates executable simultaneously on disjoint qubits."""

    gates: tuple[Gate, ...]
    duration: float = 0.0

    def __post_init__(self):
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        seen: set[int] = set()
        for g in self.gates:
            for q in g.qubits:
                if q in seen:
                    raise QubitIndexError(f"qubit {q} appears twice in one layer")
                seen.add(q)


def schedule_layers(circ: Circuit, calib) -> list[Layer]:
    """Greedy ASAP layering with per-layer duration from calibration.

    Each gate joins the earliest layer after the last layer occupied by any
    of its qubits (and after any preceding barrier); a layer's duration is
    the maximum calibrated duration of its members. Concatenating the layers
    in order reproduces a valid execution order of ``circ``.
    """
    frontier = [0] * circ.n_qubits
    barrier_at = set(circ.barriers)
    layer_gates: list[list[Gate]] = []
    layer_dur: list[float] = []
    floor = 0
    for i, g in enumerate(circ.gates):
        if i in barrier_at:
            floor = len(layer_gates)
        target = max(floor, max(frontier[q] for q in g.qubits))
        if target == len(layer_gates):
            layer_gates.append([])
            layer_dur.append(0.0)
        duration = calib.lookup(g)[1]
        layer_gates[target].append(g)
        layer_dur[target] = max(layer_dur[target], duration)
        for q in g.qubits:
            frontier[q] = target + 1
    return [Layer(tuple(gs), d) for gs, d in zip(layer_gates, layer_dur)]


def _inverse_gate(g: Gate) -> Gate:
    if g.kind in _SELF_INVERSE:
        return g
    if g.kind in _INVERSE_KIND:
        return Gate(_INVERSE_KIND[g.kind], g.qubits)
    if g.kind in _NEGATE_PARAMS:
        return Gate(g.kind, g.qubits, tuple(-p for p in g.params))
    if g.kind == "U":
        theta, phi, lam = g.params
        return Gate("U", g.qubits, (-theta, -lam, -phi))
    raise UnsupportedGateError(f"no inverse defined for gate kind {g.kind!r}")


def invert(circ: Circuit) -> Circuit:
    """Reverse the gate order and replace each gate by its inverse."""
    n = len(circ.gates)
    return Circuit(
        n_qubits=circ.n_qubits,
        gates=tuple(_inverse_gate(g) for g in reversed(circ.gates)),
        measured_qubits=circ.measured_qubits,
        barriers=tuple(n - k for k in circ.barriers),
    )


def mirror(circ: Circuit) -> Circuit:
    """Concatenate ``circ`` with its inverse.

    Run noiselessly, the result maps the all-zero state back to itself,
    which is what makes mirrored circuits usable for success-rate studies.
    """
    inv = invert(circ)
    n = len(circ.gates)
    return Circuit(
        n_qubits=circ.n_qubits,
        gates=circ.gates + inv.gates,
        measured_qubits=circ.measured_qubits,
        barriers=circ.barriers + tuple(n + k for k in inv.barriers),
    )


def generate_ghz(n: int) -> Circuit:
    """GHZ preparation: H on qubit 0 then a CX chain. Gate count is ``n``."""
    if n < 1:
        raise InputError(f"GHZ size must be >= 1, got {n}")
    gates = [Gate("H", (0,))]
    gates.extend(Gate("CX", (i, i + 1)) for i in range(n - 1))
    return Circuit(n_qubits=n, gates=tuple(gates))


def generate_qft(n: int) -> Circuit:
    """Textbook quantum Fourier transform with the final swap network.

    For each qubit i: an H, then CP(pi / 2**(k-i)) from each qubit k > i.
    Swaps are emitted as 3 CX each, so the gate count is
    ``n + n(n-1)/2 + 3*(n//2)``.
    """
    if n < 1:
        raise InputError(f"QFT size must be >= 1, got {n}")
    gates: list[Gate] = []
    for i in range(n):
        gates.append(Gate("H", (i,)))
        for k in range(i + 1, n):
            gates.append(Gate("CP", (k, i), (math.pi / 2 ** (k - i),)))
    for i in range(n // 2):
        a, b = i, n - 1 - i
        gates.append(Gate("CX", (a, b)))
        gates.append(Gate("CX", (b, a)))
        gates.append(Gate("CX", (a, b)))
    return Circuit(n_qubits=n, gates=tuple(gates))


def generate_random(
    n_qubits: int,
    n_gates: int,
    seed: int,
    two_qubit_fraction: float = 0.3,
) -> Circuit:
    """Random compiled-style circuit over the native-like basis {RZ, SX, X, CX}.

    Deterministic for a given seed. Two-qubit gates act on uniformly drawn
    distinct pairs, mimicking a circuit already mapped to hardware.
    """
    if n_qubits < 1 or n_gates < 0:
        raise InputError("need n_qubits >= 1 and n_gates >= 0")
    if n_qubits < 2:
        two_qubit_fraction = 0.0
    rng = np.random.default_rng(seed)
    is_two = rng.random(n_gates) < two_qubit_fraction
    kinds = rng.integers(0, 3, size=n_gates)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=n_gates)
    q0 = rng.integers(0, n_qubits, size=n_gates)
    shift = rng.integers(1, max(n_qubits, 2), size=n_gates)
    gates: list[Gate] = []
    append = gates.append
    for j in range(n_gates):
        a = int(q0[j])
        if is_two[j]:
            b = (a + int(shift[j])) % n_qubits
            append(Gate("CX", (a, b)))
        else:
            k = kinds[j]
            if k == 0:
                append(Gate("RZ", (a,), (float(angles[j]),)))
            elif k == 1:
                append(Gate("SX", (a,)))
            else:
                append(Gate("X", (a,)))
    return Circuit(n_qubits=n_qubits, gates=tuple(gates))


FAMILIES: dict[str, Callable[[int], Circuit]] = {
    "ghz": generate_ghz,
    "qft": generate_qft,
}

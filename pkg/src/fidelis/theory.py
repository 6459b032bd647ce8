"""Closed-form fidelity formulas for repeated depolarizing channels.

Everything here is a pure function of floats. The depolarizing channel
with probability ``p`` on a ``d``-dimensional system mixes the state
toward the maximally mixed state ``I/d``; these formulas track the
fidelity of an initially pure state under such channels, the per-qubit
splitting of a two-qubit channel, and the worst-case coherence decay
used to fold T1/T2 into gate-level estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class DepolParams:
    """A depolarizing channel: probability ``p`` on a ``d``-dimensional system."""

    p: float
    d: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InputError(f"depolarization probability must be in [0, 1], got {self.p}")
        if self.d < 2 or self.d & (self.d - 1):
            raise InputError(f"dimension must be a power of 2 and >= 2, got {self.d}")

    def fidelity_after(self, n: int) -> float:
        return fidelity_after_n(self.p, n, self.d)

    def step(self, f_prev: float) -> float:
        return fidelity_step(f_prev, self.p, self.d)


def fidelity_after_n(p: float, n: int, d: int) -> float:
    """Fidelity between a pure state and itself after ``n`` depolarizations.

    Returns ``(1-p)**n + (1 - (1-p)**n) / d``, which decays from 1 toward
    the maximally mixed floor ``1/d``. ``(1-p)**n`` underflow for huge
    ``n`` is benign: the result clamps to the floor.
    """
    keep = (1.0 - p) ** n
    return keep + (1.0 - keep) / d


def fidelity_step(f_prev: float, p: float, d: int) -> float:
    """Single-channel fidelity recurrence: ``(1-p) * f_prev + p / d``.

    Iterating from 1 reproduces :func:`fidelity_after_n` step by step.
    """
    return (1.0 - p) * f_prev + p / d


def eta(f_a: float, f_b: float, p: float, d_ab: int = 4) -> float:
    """Nonnegative correction splitting a joint channel across two qubits.

    ``eta`` is the positive root of ``x**2 + A*x - p/d_ab = 0`` with
    ``A = sqrt(1-p) * (f_a + f_b)``, chosen so that

        (sqrt(1-p)*f_a + eta) * (sqrt(1-p)*f_b + eta)
            == (1-p)*f_a*f_b + p/d_ab

    i.e. the two per-qubit factors multiply back to the joint post-channel
    fidelity. Evaluated as ``(2p/d_ab) / (sqrt(A**2 + 4p/d_ab) + A)`` to
    avoid cancellation when ``p`` is tiny.
    """
    if p == 0.0:
        return 0.0
    a = math.sqrt(1.0 - p) * (f_a + f_b)
    c = 4.0 * p / d_ab
    return (2.0 * p / d_ab) / (math.sqrt(a * a + c) + a)


def entangled_fidelity_bounds(p: float, d_a: int) -> tuple[float, float]:
    """Fidelity bounds for depolarizing one subsystem of a joint state.

    A channel with probability ``p`` acting on a ``d_a``-dimensional
    subsystem yields fidelity ``(1-p) + (p/d_a) * purity`` of the traced-out
    remainder; purity spans (0, 1], so the fidelity lies in
    ``[(1-p), (1-p) + p/d_a]`` with the upper end attained by product
    states.
    """
    lower = 1.0 - p
    return lower, lower + p / d_a


def coherence_factor(t: float, t1: float, t2: float) -> float:
    """Worst-case fidelity scaling for idling ``t`` ns with given T1/T2.

    Returns ``exp(-t/t1) * (0.5 * exp(-t/t2) + 0.5)``: relaxation decays
    to 0 while dephasing decays to an 0.5 offset, matching how vendors fit
    coherence calibration curves. Equals 1 at ``t == 0`` and is strictly
    decreasing in ``t``. Times are in the same unit (nanoseconds here);
    ``math.inf`` is a valid "no decay" sentinel for ``t1``/``t2``.
    """
    return math.exp(-t / t1) * (0.5 * math.exp(-t / t2) + 0.5)

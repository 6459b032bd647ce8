"""Closed-form formula tests, checked against exact channel evolution."""

import math

import numpy as np
import pytest

from fidelis import (
    DensityMatrix,
    DepolParams,
    InputError,
    PureState,
    apply_depolarizing,
    coherence_factor,
    entangled_fidelity_bounds,
    eta,
    fidelity_after_n,
    fidelity_pure_mixed,
    fidelity_step,
)

from _reference import random_pure_state


def test_fidelity_after_n_trivial_cases():
    assert fidelity_after_n(0.1, 0, 2) == 1.0
    assert fidelity_after_n(0.0, 10, 2) == 1.0
    assert fidelity_after_n(0.0, 0, 4) == 1.0


def test_fidelity_after_n_matches_exact_channel_iteration():
    # 100 channel applications on a random pure 1-qubit state
    rng = np.random.default_rng(42)
    psi = PureState(random_pure_state(1, rng))
    state = psi.density_matrix()
    for _ in range(100):
        state = apply_depolarizing(state, [0], 0.002)
    oracle = fidelity_pure_mixed(psi, state)
    closed = fidelity_after_n(0.002, 100, 2)
    assert abs(closed - oracle) < 1e-10
    assert closed == pytest.approx(0.9092834023442138, abs=1e-14)


def test_fidelity_after_n_floors_at_maximally_mixed():
    assert fidelity_after_n(0.5, 10_000, 2) == pytest.approx(0.5, abs=1e-15)
    assert fidelity_after_n(0.3, 10_000, 4) == pytest.approx(0.25, abs=1e-15)


def test_fidelity_after_n_monotone_in_n_and_p():
    rng = np.random.default_rng(1)
    for _ in range(50):
        p = rng.uniform(0.0, 0.3)
        d = int(rng.choice([2, 4]))
        values = [fidelity_after_n(p, n, d) for n in range(0, 40)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        n = int(rng.integers(1, 30))
        ps = np.sort(rng.uniform(0, 1, size=8))
        fs = [fidelity_after_n(q, n, d) for q in ps]
        assert all(a >= b - 1e-15 for a, b in zip(fs, fs[1:]))


def test_fidelity_step_basics():
    assert fidelity_step(1.0, 0.0, 2) == 1.0
    assert fidelity_step(1.0, 0.002, 2) == pytest.approx(0.999, abs=1e-15)
    assert fidelity_step(1.0, 0.002, 2) == fidelity_after_n(0.002, 1, 2)
    # the maximally mixed floor is a fixed point
    for p in (0.0, 0.1, 0.9):
        assert fidelity_step(0.5, p, 2) == pytest.approx(0.5, abs=1e-15)


def test_fidelity_step_iteration_matches_closed_form():
    rng = np.random.default_rng(7)
    for _ in range(100):
        p = rng.uniform(0, 0.3)
        d = int(rng.choice([2, 4]))
        n = int(rng.integers(0, 10_000))
        f = 1.0
        for _ in range(n):
            f = fidelity_step(f, p, d)
        assert abs(f - fidelity_after_n(p, n, d)) < 1e-10


def test_eta_zero_noise():
    assert eta(1.0, 1.0, 0.0) == 0.0
    assert eta(0.3, 0.9, 0.0) == 0.0


def test_eta_frozen_example():
    # p equivalent to a two-qubit gate fidelity of 0.995
    p = 4 * (1 - 0.995) / 3
    e = eta(1.0, 1.0, p, 4)
    assert e == pytest.approx(0.0008357746479299607, abs=1e-15)
    factor = math.sqrt(1 - p) + e
    assert factor * factor == pytest.approx(0.995, abs=1e-12)


@pytest.mark.parametrize("p", [1e-7, 1e-3, 0.01, 0.3, 0.9])
def test_eta_factorization_identity(p):
    rng = np.random.default_rng(int(p * 1e9) + 3)
    for _ in range(200):
        f_a, f_b = rng.uniform(0.05, 1.0, size=2)
        e = eta(f_a, f_b, p, 4)
        assert e >= 0.0
        left = (math.sqrt(1 - p) * f_a + e) * (math.sqrt(1 - p) * f_b + e)
        right = (1 - p) * f_a * f_b + p / 4
        assert abs(left - right) < 1e-12


def test_entangled_fidelity_bounds_values():
    assert entangled_fidelity_bounds(0.0, 2) == (1.0, 1.0)
    lo, hi = entangled_fidelity_bounds(0.01, 2)
    assert lo == pytest.approx(0.99, abs=1e-15)
    assert hi == pytest.approx(0.995, abs=1e-15)


def test_entangled_fidelity_bounds_bracket_bell_state():
    # depolarizing one qubit of a Bell pair: exact fidelity 1 - 3p/4,
    # strictly inside the bounds (the traced-out half is maximally mixed)
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    psi = PureState(bell)
    for p in (0.001, 0.01, 0.1):
        noisy = apply_depolarizing(psi.density_matrix(), [0], p)
        fid = fidelity_pure_mixed(psi, noisy)
        assert fid == pytest.approx(1 - 0.75 * p, abs=1e-12)
        lo, hi = entangled_fidelity_bounds(p, 2)
        assert lo < fid < hi


def test_coherence_factor_limits():
    assert coherence_factor(0.0, 100.0, 50.0) == 1.0
    assert coherence_factor(123.0, math.inf, math.inf) == 1.0


def test_coherence_factor_frozen_value():
    assert coherence_factor(1.0, 1.0, 1.0) == pytest.approx(0.2516073622040275, abs=1e-15)


def test_coherence_factor_strictly_decreasing():
    ts = np.linspace(0, 5000, 50)
    vals = [coherence_factor(t, 700.0, 400.0) for t in ts]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(0.0 < v <= 1.0 for v in vals)


def test_depol_params_type():
    ch = DepolParams(0.002, 2)
    assert ch.fidelity_after(100) == fidelity_after_n(0.002, 100, 2)
    assert ch.step(1.0) == fidelity_step(1.0, 0.002, 2)
    with pytest.raises(InputError):
        DepolParams(-0.1, 2)
    with pytest.raises(InputError):
        DepolParams(0.1, 3)
    with pytest.raises(InputError):
        DepolParams(0.1, 1)

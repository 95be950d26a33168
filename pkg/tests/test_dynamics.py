import math

import numpy as np
import pytest

from conftest import hadamard_frame
from cyclewalk.canonicalizer import Verdict, are_equivalent
from cyclewalk.dynamics import (
    WalkState,
    basis_state,
    distribution,
    evolve,
    spectra_match,
    spectrum,
)
from cyclewalk.walk_core import (
    CycleWalk,
    apply_gauge,
    build_canonical_matrix,
    build_from_frames,
    random_cycle_walk,
    random_gauge,
)


def shift_walk(n):
    return CycleWalk(build_canonical_matrix([1.0] * n, [0.0] * n, 0.0))


def random_state(n, rng):
    v = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
    return WalkState(n, v / np.linalg.norm(v))


def test_shift_evolution_moves_e1_forward():
    states = evolve(shift_walk(5), basis_state(5, 1, 1), 3)
    for t, psi in enumerate(states):
        assert np.array_equal(psi.amplitudes, basis_state(5, 1 + t, 1).amplitudes)


def test_zero_steps():
    psi = basis_state(4, 2, 2)
    assert evolve(shift_walk(4), psi, 0) == [psi]


def test_evolve_rejects_mismatch_and_negative_steps():
    with pytest.raises(ValueError):
        evolve(shift_walk(4), basis_state(5, 1, 1), 1)
    with pytest.raises(ValueError):
        evolve(shift_walk(4), basis_state(4, 1, 1), -1)


def test_norm_drift_small():
    rng = np.random.default_rng(0)
    walk = random_cycle_walk(9, 1)
    states = evolve(walk, random_state(9, rng), 50)
    assert max(abs(np.linalg.norm(s.amplitudes) - 1) for s in states) < 1e-9


def test_state_requires_normalization():
    with pytest.raises(ValueError, match="normalized"):
        WalkState(3, np.ones(6))


def test_distribution_point_mass():
    d = distribution(basis_state(5, 3, 1))
    assert d.probs == (0.0, 0.0, 1.0, 0.0, 0.0)


def test_distribution_superposition():
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[3] = 1 / math.sqrt(2)
    d = distribution(WalkState(4, amps))
    assert d.probs == pytest.approx([0.5, 0.5, 0.0, 0.0])


def test_hadamard_distribution_matches_matrix_power():
    n = 7
    walk = build_from_frames([hadamard_frame()] * n)
    psi = basis_state(n, 1, 1)
    states = evolve(walk, psi, 12)
    for t in (0, 1, 5, 12):
        direct = np.linalg.matrix_power(walk.matrix, t) @ psi.amplitudes
        expected = [abs(direct[2 * x]) ** 2 + abs(direct[2 * x + 1]) ** 2 for x in range(n)]
        assert distribution(states[t]).probs == pytest.approx(expected, abs=1e-12)
        assert sum(distribution(states[t]).probs) == pytest.approx(1.0, abs=1e-10)


def test_shift_spectrum_cube_roots_doubled():
    roots = [np.exp(2j * math.pi * k / 3) for k in range(3)] * 2
    spec = spectrum(shift_walk(3))
    assert len(spec) == 6
    assert spectra_match(spec, roots, tol=1e-10)


def test_spectrum_sorted_and_unit_modulus():
    spec = spectrum(random_cycle_walk(8, 2))
    args = [math.atan2(z.imag, z.real) for z in spec]
    assert args == sorted(args)
    assert max(abs(abs(z) - 1) for z in spec) <= 1e-8


@pytest.mark.parametrize("seed", range(10))
def test_spectrum_gauge_covariance(seed):
    rng = np.random.default_rng(seed)
    walk = random_cycle_walk(6, seed)
    g = random_gauge(6, rng)
    rotated = [np.exp(1j * g.global_phase) * z for z in spectrum(walk)]
    assert spectra_match(spectrum(apply_gauge(g, walk)), rotated, tol=1e-8)


def test_spectra_match_detects_difference():
    assert not spectra_match([1, -1], [1, 1j])
    assert not spectra_match([1], [1, 1])


def test_shift_period():
    for n in (3, 4, 7):
        m = shift_walk(n).matrix
        assert np.max(np.abs(np.linalg.matrix_power(m, n) - np.eye(2 * n))) <= 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_distributions_invariant_under_equivalence(seed):
    rng = np.random.default_rng(100 + seed)
    n = 3 + seed % 6
    u1 = random_cycle_walk(n, seed)
    u2 = apply_gauge(random_gauge(n, rng), u1)
    v = are_equivalent(u1, u2)
    assert v.status is Verdict.EQUIVALENT
    psi = random_state(n, rng)
    moved = WalkState(n, v.witness.apply_state(psi.amplitudes))
    a = evolve(u1, psi, 30)
    b = evolve(u2, moved, 30)
    for s1, s2 in zip(a, b):
        assert distribution(s1).probs == pytest.approx(distribution(s2).probs, abs=1e-9)

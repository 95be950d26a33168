"""Evolution, vertex distributions and spectra of cycle walks."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phase_ring import angle_distance
from .walk_core import CycleWalk

__all__ = [
    "WalkState",
    "VertexDistribution",
    "SpectrumError",
    "basis_state",
    "evolve",
    "distribution",
    "spectrum",
    "spectra_match",
]

_NORM_TOL = 1e-10
_EIG_RESIDUAL = 1e-8


class SpectrumError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class WalkState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2 * self.n,):
            raise ValueError(f"expected {2 * self.n} amplitudes, got {amps.shape[0]}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized (norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


def basis_state(n: int, x: int, i: int) -> WalkState:
    """``e_i^x`` with 1-based ``x`` and ``i``."""
    amps = np.zeros(2 * n, dtype=complex)
    amps[2 * (x - 1) + (i - 1)] = 1.0
    return WalkState(n, amps)


@dataclass(frozen=True)
class VertexDistribution:
    step: int
    probs: tuple[float, ...]


def evolve(u: CycleWalk, psi: WalkState, steps: int) -> list[WalkState]:
    """``[psi, U psi, ..., U^steps psi]``."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if psi.n != u.n:
        raise ValueError(f"state on {psi.n} vertices, walk on {u.n}")
    states = [psi]
    v = psi.amplitudes
    for _ in range(steps):
        v = u.matrix @ v
        states.append(WalkState(u.n, v))
    return states


def distribution(psi: WalkState, step: int = 0) -> VertexDistribution:
    """Probability of finding the walker at each vertex."""
    probs = np.sum(np.abs(psi.amplitudes.reshape(psi.n, 2)) ** 2, axis=1)
    return VertexDistribution(step=step, probs=tuple(float(p) for p in probs))


def spectrum(u: CycleWalk) -> list[complex]:
    """Eigenvalues of ``U``, sorted by principal argument, then real part.

    Every eigenpair is checked: ``||U v - lam v|| <= 1e-8`` and ``|lam| = 1``.
    """
    vals, vecs = np.linalg.eig(u.matrix)
    res = np.linalg.norm(u.matrix @ vecs - vecs * vals, axis=0) / np.linalg.norm(vecs, axis=0)
    worst = float(np.max(res))
    if worst > _EIG_RESIDUAL:
        raise SpectrumError(f"eigenpair residual {worst:.3e} exceeds {_EIG_RESIDUAL:.0e}")
    modulus = float(np.max(np.abs(np.abs(vals) - 1.0)))
    if modulus > _EIG_RESIDUAL:
        raise SpectrumError(f"eigenvalue off the unit circle by {modulus:.3e}")
    order = np.lexsort((vals.real, np.angle(vals)))
    return [complex(v) for v in vals[order]]


def spectra_match(first, second, tol: float = 1e-7) -> bool:
    """Multiset equality of two unit-modulus spectra under wraparound
    angular distance, by greedy nearest matching."""
    first, second = list(first), list(second)
    if len(first) != len(second):
        return False
    remaining = [math.atan2(z.imag, z.real) for z in second]
    for z in first:
        ang = math.atan2(z.imag, z.real)
        best = min(range(len(remaining)), key=lambda k: angle_distance(ang, remaining[k]))
        if angle_distance(ang, remaining[best]) > tol:
            return False
        remaining.pop(best)
    return True

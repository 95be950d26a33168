"""Canonical forms and unitary-equivalence decisions for cycle walks."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .phase_ring import (
    EPS_ANGLE,
    TWO_PI,
    alpha_upper_bound,
    angle_distance,
    in_half_open_range,
    reduce_mod_2pi,
    solve_alpha_l,
)
from .walk_core import (
    EPS_DEG,
    EPS_UNIT,
    CycleWalk,
    GaugeTransform,
    LocalFrame,
    build_canonical_matrix,
    shift_operator,
    to_zeta_form,
)

EPS_PARAM = 1e-9
# float noise just below 2*pi is reported as 0
_WRAP_SNAP = 1e-12

__all__ = [
    "EPS_PARAM",
    "CanonicalParams",
    "Verdict",
    "EquivalenceVerdict",
    "CanonicalizationError",
    "WitnessVerificationError",
    "extract_frames",
    "canonicalize",
    "param_distance",
    "are_equivalent",
    "is_translation_invariant",
    "canonicalize_translation_invariant",
]


class CanonicalizationError(RuntimeError):
    """Internal consistency check failed while reducing a walk."""


class WitnessVerificationError(RuntimeError):
    """A gauge witness did not map one walk onto the other within tolerance."""


@dataclass(frozen=True)
class CanonicalParams:
    """``(r, theta, alpha)`` of the canonical walk on an ``n``-cycle.

    Construction only checks shapes and finiteness so that off-range points can
    still be materialized; :meth:`range_violations` reports canonical-range
    problems. ``degenerate`` defaults to whether any ``r_x`` is within
    ``EPS_DEG`` of 0 or 1.
    """

    n: int
    r: tuple[float, ...]
    theta: tuple[float, ...]
    alpha: float
    degenerate: bool | None = None

    def __post_init__(self):
        r = tuple(float(v) for v in self.r)
        theta = tuple(float(v) for v in self.theta)
        if len(r) != self.n or len(theta) != self.n:
            raise ValueError(f"expected {self.n} entries in r and theta, got {len(r)} and {len(theta)}")
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if not all(math.isfinite(v) for v in r + theta + (float(self.alpha),)):
            raise ValueError("canonical parameters must be finite")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", float(self.alpha))
        if self.degenerate is None:
            deg = any(v <= EPS_DEG or v >= 1.0 - EPS_DEG for v in r)
            object.__setattr__(self, "degenerate", deg)

    def range_violations(self, eps: float = EPS_ANGLE) -> list[str]:
        problems = []
        for x, v in enumerate(self.r, start=1):
            if not 0.0 <= v <= 1.0:
                problems.append(f"r[{x}] = {v!r} outside [0, 1]")
        if angle_distance(self.theta[0], 0.0) > eps:
            problems.append(f"theta[1] = {self.theta[0]!r} is not 0")
        w = TWO_PI / self.n
        if not in_half_open_range(self.theta[1], w, eps):
            problems.append(f"theta[2] = {self.theta[1]!r} outside [0, 2pi/{self.n})")
        for x, v in enumerate(self.theta[2:], start=3):
            if not 0.0 <= v < TWO_PI:
                problems.append(f"theta[{x}] = {v!r} outside [0, 2pi)")
        bound = alpha_upper_bound(self.n)
        if not in_half_open_range(self.alpha, bound, eps):
            problems.append(f"alpha = {self.alpha!r} outside [0, {bound!r})")
        return problems

    def is_canonical(self) -> bool:
        return not self.range_violations()


class Verdict(enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT_EQUIVALENT"
    INDETERMINATE_DEGENERATE = "INDETERMINATE_DEGENERATE"


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: Verdict
    witness: GaugeTransform | None
    max_param_distance: float
    witness_residual: float | None = field(default=None)


def _snap(angle: float) -> float:
    return 0.0 if angle > TWO_PI - _WRAP_SNAP else angle


def extract_frames(u: CycleWalk) -> tuple[list[LocalFrame], GaugeTransform]:
    """Local frames ``(r, a, b, c, d)`` of the zeta form of ``u``, and the gauge
    ``W0`` with ``W0 U W0^H`` equal to the walk built from those frames."""
    frames, w0 = to_zeta_form(u)
    for x, f in enumerate(frames, start=1):
        if f.constraint_residual() > EPS_ANGLE:
            raise CanonicalizationError(f"frame at vertex {x} breaks a - c = b - d + pi")
    return frames, w0


def canonicalize(u: CycleWalk, *, tol: float = EPS_UNIT) -> tuple[CanonicalParams, GaugeTransform]:
    """Reduce ``u`` to its canonical form.

    Returns the parameters and a witness ``G`` with
    ``apply_gauge(G, u) == build_from_canonical(params)``; that identity is
    checked to ``tol`` before returning.
    """
    n = u.n
    frames, w0 = extract_frames(u)
    a = [f.a for f in frames]
    b = [f.b for f in frames]
    c = [f.c for f in frames]
    d = [f.d for f in frames]

    beta = sum(d) - sum(a)
    gamma = sum(a)
    delta = -a[1] - d[1] + b[1] - b[0]
    sol = solve_alpha_l(n, beta, gamma, delta)
    alpha, l = sol.alpha, sol.l

    # 0-based: p[k], q[k] belong to vertex k + 1
    p = [0.0] * n
    q = [0.0] * n
    q[0] = a[0] - b[0]
    for k in range(1, n):
        p[k] = p[k - 1] + a[k - 1] - l
        q[k] = q[k - 1] - d[k] + alpha + l

    theta = [0.0] * n
    for k in range(1, n):
        p_next = p[k + 1] if k + 1 < n else 0.0
        theta[k] = _snap(reduce_mod_2pi(b[k] + q[k] - p_next - l))
    if angle_distance(theta[1], sol.offset) > EPS_ANGLE:
        raise CanonicalizationError(
            f"theta_2 = {theta[1]!r} disagrees with the solver offset {sol.offset!r}"
        )
    theta[1] = sol.offset

    for k in range(n):
        if frames[k].degenerate:
            continue
        lhs = c[k] + p[k] - q[k - 1] - l
        rhs = -theta[k] + alpha + math.pi
        if angle_distance(lhs, rhs) > 1e3 * EPS_ANGLE:
            raise CanonicalizationError(f"c-phase relation fails at vertex {k + 1}")

    params = CanonicalParams(n=n, r=tuple(f.r for f in frames), theta=tuple(theta), alpha=alpha)
    witness = GaugeTransform.diagonal(p, q, global_phase=l).compose(w0)
    target = build_canonical_matrix(params.r, params.theta, params.alpha)
    residual = float(np.max(np.abs(witness.conjugate(u.matrix) - target)))
    if residual > tol:
        raise CanonicalizationError(f"canonical form verification residual {residual:.3e} > {tol:.1e}")
    return params, witness


def param_distance(p1: CanonicalParams, p2: CanonicalParams) -> float:
    """Largest coordinate difference; angles use wraparound distance."""
    if p1.n != p2.n:
        raise ValueError("parameter sets for different cycle lengths")
    dr = max(abs(x - y) for x, y in zip(p1.r, p2.r))
    dt = max(angle_distance(x, y) for x, y in zip(p1.theta, p2.theta))
    return max(dr, dt, angle_distance(p1.alpha, p2.alpha))


def _params_match(p1: CanonicalParams, p2: CanonicalParams) -> bool:
    return (all(abs(x - y) <= EPS_PARAM for x, y in zip(p1.r, p2.r))
            and all(angle_distance(x, y) <= EPS_ANGLE for x, y in zip(p1.theta, p2.theta))
            and angle_distance(p1.alpha, p2.alpha) <= EPS_ANGLE)


def are_equivalent(u1: CycleWalk, u2: CycleWalk, *, tol: float = EPS_PARAM) -> EquivalenceVerdict:
    """Decide whether ``e^{il} W u1 W^H = u2`` for some block-diagonal ``W``.

    Matching canonical forms always give EQUIVALENT with a verified witness.
    A mismatch gives NOT_EQUIVALENT only when both walks are non-degenerate;
    otherwise the answer is INDETERMINATE_DEGENERATE.
    """
    if u1.n != u2.n:
        raise ValueError(f"walks on different cycles: {u1.n} vs {u2.n}")
    p1, g1 = canonicalize(u1)
    p2, g2 = canonicalize(u2)
    dist = param_distance(p1, p2)
    if _params_match(p1, p2):
        witness = g2.inverse().compose(g1)
        residual = float(np.max(np.abs(witness.conjugate(u1.matrix) - u2.matrix)))
        if residual > tol:
            raise WitnessVerificationError(f"witness residual {residual:.3e} > {tol:.1e}")
        return EquivalenceVerdict(Verdict.EQUIVALENT, witness, dist, residual)
    if p1.degenerate or p2.degenerate:
        return EquivalenceVerdict(Verdict.INDETERMINATE_DEGENERATE, None, dist)
    return EquivalenceVerdict(Verdict.NOT_EQUIVALENT, None, dist)


def is_translation_invariant(u: CycleWalk, *, tol: float = EPS_UNIT) -> bool:
    """``S U S^H == U`` for the vertex shift ``S``."""
    s = shift_operator(u.n)
    return float(np.max(np.abs(s @ u.matrix @ s.T - u.matrix))) <= tol


def canonicalize_translation_invariant(u: CycleWalk, *, tol: float = EPS_PARAM) -> tuple[float, float]:
    """``(r, alpha)`` of a translation-invariant walk.

    The full canonical form must then have constant ``r`` and ``theta = 0``;
    both are checked to ``tol``.
    """
    if not is_translation_invariant(u):
        raise ValueError("walk is not translation invariant")
    params, _ = canonicalize(u)
    r0 = params.r[0]
    if max(abs(v - r0) for v in params.r) > tol:
        raise CanonicalizationError("translation-invariant walk produced non-constant r")
    if max(angle_distance(t, 0.0) for t in params.theta) > tol:
        raise CanonicalizationError("translation-invariant walk produced nonzero theta")
    return r0, params.alpha

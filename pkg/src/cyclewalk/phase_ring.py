"""Angle arithmetic modulo 2*pi and the lattice solvers used by canonicalization.

Angles are plain floats holding the representative in ``[0, 2*pi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
EPS_ANGLE = 1e-9

__all__ = [
    "TWO_PI",
    "EPS_ANGLE",
    "PhaseSolution",
    "reduce_mod_2pi",
    "angle_distance",
    "angles_close",
    "in_half_open_range",
    "lattice_set_4pi_over_N",
    "alpha_upper_bound",
    "solve_alpha_l",
    "solve_alpha_l_exhaustive",
    "doubled_phase_class",
]


def reduce_mod_2pi(x: float) -> float:
    """Return the representative of ``x`` in ``[0, 2*pi)``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"angle must be finite, got {x!r}")
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    # fmod of a tiny negative number plus 2*pi rounds up to 2*pi
    if y >= TWO_PI or y == 0.0:
        y = 0.0
    return y


def angle_distance(a: float, b: float) -> float:
    """Wraparound distance between two angles, in ``[0, pi]``."""
    d = reduce_mod_2pi(a - b)
    return min(d, TWO_PI - d)


def angles_close(a: float, b: float, eps: float = EPS_ANGLE) -> bool:
    return angle_distance(a, b) <= eps


def in_half_open_range(value: float, upper: float, eps: float = EPS_ANGLE) -> bool:
    """Test ``0 <= value < upper`` for a reduced angle.

    A value within ``eps`` below 2*pi is read as 0 first, so wraparound noise
    cannot flip the verdict.
    """
    v = _wrap_near_2pi(reduce_mod_2pi(value), eps)
    return 0.0 <= v < upper


def _wrap_near_2pi(v: float, eps: float) -> float:
    return 0.0 if v > TWO_PI - eps else v


def _check_n(n: int) -> int:
    if int(n) != n or n < 3:
        raise ValueError(f"cycle length must be an integer >= 3, got {n!r}")
    return int(n)


def lattice_set_4pi_over_N(n: int) -> list[float]:
    """The set ``(4*pi/n) * Z`` modulo 2*pi, sorted ascending.

    Even ``n`` gives ``n/2`` points spaced ``4*pi/n``; odd ``n`` gives ``n`` points
    spaced ``2*pi/n``.
    """
    n = _check_n(n)
    if n % 2 == 0:
        return [reduce_mod_2pi(4.0 * math.pi * m / n) for m in range(n // 2)]
    return [reduce_mod_2pi(2.0 * math.pi * m / n) for m in range(n)]


def alpha_upper_bound(n: int) -> float:
    """Exclusive upper bound of the canonical ``alpha`` range for an ``n``-cycle."""
    n = _check_n(n)
    return (4.0 if n % 2 == 0 else 2.0) * math.pi / n


@dataclass(frozen=True)
class PhaseSolution:
    """Solution of ``n*alpha = beta``, ``n*l = gamma`` with the range conditions.

    ``offset`` is ``delta + alpha + 2*l`` reduced into ``[0, 2*pi/n)``; ``m1`` and
    ``m2`` are the lattice indices in ``alpha = (beta + 2*pi*m1)/n`` and
    ``l = (gamma + 2*pi*m2)/n`` with ``beta`` and ``gamma`` taken reduced.
    """

    alpha: float
    l: float
    m1: int
    m2: int
    offset: float


def solve_alpha_l(n: int, beta: float, gamma: float, delta: float,
                  eps: float = EPS_ANGLE) -> PhaseSolution:
    """Find ``alpha`` and ``l`` with ``n*alpha = beta``, ``n*l = gamma`` (mod 2*pi),
    ``0 <= delta + alpha + 2*l < 2*pi/n`` and ``alpha`` in its parity range.

    Odd ``n``: ``alpha`` takes the unique root in ``[0, 2*pi/n)`` and ``m2`` is
    chosen so the offset lands in range (``4*pi/n`` generates ``2*pi/n`` steps).
    Even ``n``: ``m2`` puts ``t = delta + (beta + 2*gamma)/n + 4*pi*m2/n`` in
    ``[-2*pi/n, 2*pi/n)``; a negative ``t`` moves ``alpha`` up one root.
    """
    n = _check_n(n)
    beta = _wrap_near_2pi(reduce_mod_2pi(beta), eps)
    gamma = reduce_mod_2pi(gamma)
    delta = reduce_mod_2pi(delta)
    w = TWO_PI / n
    # beta in [0, 2pi) already puts beta/n in [0, w), so m3 = 0
    base = delta + (beta + 2.0 * gamma) / n

    if n % 2 == 1:
        m1 = 0
        u = reduce_mod_2pi(base)
        k = int(math.floor(u / w))
        t = u - k * w
        if t >= w - eps:
            k += 1
            t -= w
        if t < 0.0:
            t = 0.0
        # 2*m2 = -k (mod n); (n + 1)/2 inverts 2
        m2 = (-k * ((n + 1) // 2)) % n
        offset = t
    else:
        half = n // 2
        v = reduce_mod_2pi(base + w)
        j = int(math.floor(v / (2.0 * w)))
        t = v - w - 2.0 * w * j
        if t >= w - eps:
            j += 1
            t -= 2.0 * w
        elif -eps <= t < 0.0:
            t = 0.0
        m2 = (-j) % half
        if t < 0.0:
            m1 = 1
            offset = max(t + w, 0.0)
        else:
            m1 = 0
            offset = t

    alpha = (beta + TWO_PI * m1) / n
    l = reduce_mod_2pi((gamma + TWO_PI * m2) / n)
    return PhaseSolution(alpha=alpha, l=l, m1=m1, m2=m2, offset=offset)


def solve_alpha_l_exhaustive(n: int, beta: float, gamma: float, delta: float,
                             eps: float = EPS_ANGLE) -> list[PhaseSolution]:
    """Every lattice pair ``(m1, m2)`` in ``{0..n-1}^2`` meeting all constraints.

    Boundary comparisons are loosened by ``eps``, so points sitting on a range
    edge may appear twice (once from each side).
    """
    n = _check_n(n)
    beta = _wrap_near_2pi(reduce_mod_2pi(beta), eps)
    gamma = reduce_mod_2pi(gamma)
    delta = reduce_mod_2pi(delta)
    w = TWO_PI / n
    bound = alpha_upper_bound(n)
    found = []
    for m1 in range(n):
        alpha = (beta + TWO_PI * m1) / n
        if not (-eps <= alpha < bound + eps):
            continue
        for m2 in range(n):
            l = (gamma + TWO_PI * m2) / n
            off = reduce_mod_2pi(delta + alpha + 2.0 * l)
            if off < w + eps or off > TWO_PI - eps:
                found.append(PhaseSolution(alpha=alpha, l=reduce_mod_2pi(l),
                                           m1=m1, m2=m2, offset=off))
    return found


def doubled_phase_class(l: float, n: int, eps: float = EPS_ANGLE) -> float:
    """Return ``2*l`` mod 2*pi for an ``l`` with ``n*l = 0`` (mod 2*pi).

    The result is one of the points of :func:`lattice_set_4pi_over_N`.
    """
    n = _check_n(n)
    residual = angle_distance(n * l, 0.0)
    if residual > eps:
        raise ValueError(f"n*l is not a multiple of 2*pi (residual {residual:.3e})")
    doubled = reduce_mod_2pi(2.0 * l)
    if not any(angles_close(doubled, p, eps * n) for p in lattice_set_4pi_over_N(n)):
        raise AssertionError(f"2*l = {doubled!r} is off the 4*pi/{n} lattice")
    return doubled

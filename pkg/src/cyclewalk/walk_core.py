"""Cycle walk unitaries as data.

Coordinates follow ``index(x, i) = 2*(x - 1) + (i - 1)`` for vertex ``x`` in
``1..N`` and internal state ``i`` in ``{1, 2}``. Internally vertices are 0-based,
so vertex ``x`` (0-based) owns rows/columns ``2*x`` and ``2*x + 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .phase_ring import TWO_PI, reduce_mod_2pi

EPS_UNIT = 1e-10
EPS_RANK = 1e-8
EPS_DEG = 1e-8
# below this magnitude a coordinate's phase is pure noise and is pinned
_PHASE_PIN = 1e-12

__all__ = [
    "EPS_UNIT",
    "EPS_RANK",
    "EPS_DEG",
    "NotACycleWalkError",
    "basis_index",
    "wrap_vertex",
    "svd2x2",
    "block_singular_values",
    "CycleWalk",
    "Multidigraph",
    "Edge",
    "NaturalExpression",
    "LocalFrame",
    "GaugeTransform",
    "build_canonical_matrix",
    "build_from_canonical",
    "build_from_frames",
    "digraph_of",
    "check_conditions",
    "natural_expression",
    "to_zeta_form",
    "apply_gauge",
    "shift_operator",
    "haar_unitary_2x2",
    "random_gauge",
    "random_cycle_walk",
]


class NotACycleWalkError(ValueError):
    """Matrix fails unitarity or the cycle block-rank pattern."""


def basis_index(x: int, i: int) -> int:
    """Flat coordinate of basis vector ``e_i^x`` (both 1-based)."""
    return 2 * (x - 1) + (i - 1)


def wrap_vertex(x: int, n: int) -> int:
    """0-based vertex arithmetic on the cycle. Every ``x +- 1`` goes through here."""
    return x % n


# --------------------------------------------------------------------------- #
# 2x2 singular value decomposition
# --------------------------------------------------------------------------- #


def block_singular_values(blocks: np.ndarray) -> np.ndarray:
    """Singular values of a stack of 2x2 matrices, shape ``(..., 2)``, descending.

    The larger value comes from the Gram-matrix eigenvalue; the smaller one as
    ``|det| / sigma_1`` so that rank-1 blocks give a tiny, accurate ``sigma_2``.
    """
    b = np.asarray(blocks)
    fro = np.sum(np.abs(b) ** 2, axis=(-2, -1))
    det = np.abs(b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0])
    disc = np.sqrt(np.maximum(fro * fro - 4.0 * det * det, 0.0))
    s1 = np.sqrt(0.5 * (fro + disc))
    with np.errstate(divide="ignore", invalid="ignore"):
        s2 = np.where(s1 > 0.0, det / np.where(s1 > 0.0, s1, 1.0), 0.0)
    s2 = np.minimum(s2, s1)
    return np.stack([s1, s2], axis=-1)


def _complement(v: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def svd2x2(b: np.ndarray, tol: float = 0.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form SVD ``b = u @ diag(s) @ vh`` of a complex 2x2 matrix.

    Right singular vectors are eigenvectors of the Gram matrix ``b^H b``. Left
    vectors are ``b v / s`` when ``s > tol``; otherwise the orthogonal complement.
    """
    b = np.asarray(b, dtype=complex)
    s = block_singular_values(b)
    g = b.conj().T @ b
    p, w, q = g[0, 0].real, g[1, 1].real, g[0, 1]
    lam = s[0] * s[0]
    if abs(q) <= 1e-300 or abs(q) <= 1e-15 * (p + w):
        v1 = np.array([1.0, 0.0], dtype=complex) if p >= w else np.array([0.0, 1.0], dtype=complex)
    else:
        c1 = np.array([q, lam - p])
        c2 = np.array([lam - w, np.conj(q)])
        v1 = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
        v1 = v1 / np.linalg.norm(v1)
    v2 = _complement(v1)

    if s[0] > tol:
        u1 = b @ v1 / s[0]
        u1 = u1 / np.linalg.norm(u1)
    else:
        u1 = np.array([1.0, 0.0], dtype=complex)
    # in two dimensions u2 is fixed by u1 up to a phase, taken from b v2
    u2 = _complement(u1)
    if s[1] > tol:
        overlap = np.vdot(u2, b @ v2)
        if abs(overlap) > 0.0:
            u2 = u2 * (overlap / abs(overlap))
    u = np.column_stack([u1, u2])
    vh = np.vstack([v1.conj(), v2.conj()])
    return u, s, vh


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate ``v`` so its largest-magnitude coordinate is real positive."""
    k = int(np.argmax(np.abs(v)))
    mag = abs(v[k])
    if mag == 0.0:
        return v
    return v * (np.conj(v[k]) / mag)


# --------------------------------------------------------------------------- #
# Structure checks
# --------------------------------------------------------------------------- #


def _as_square_even(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] % 2:
        raise ValueError(f"dimension must be even, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def unitarity_residual(matrix: np.ndarray) -> float:
    """``max |U^H U - I|`` entrywise."""
    m = np.asarray(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def _blocks(matrix: np.ndarray) -> np.ndarray:
    """View as ``[y, x, i, j]`` with block ``(y, x) = P_y U P_x``."""
    n = matrix.shape[0] // 2
    return matrix.reshape(n, 2, n, 2).transpose(0, 2, 1, 3)


def _block_ranks(matrix: np.ndarray, rank_tol: float) -> np.ndarray:
    sv = block_singular_values(_blocks(matrix))
    return np.sum(sv > rank_tol, axis=-1)


def _cycle_pattern(n: int) -> np.ndarray:
    pattern = np.zeros((n, n), dtype=int)
    for x in range(n):
        pattern[wrap_vertex(x + 1, n), x] = 1
        pattern[wrap_vertex(x - 1, n), x] = 1
    return pattern


class CycleWalk:
    """A ``2N x 2N`` unitary whose block ``P_y U P_x`` has rank 1 exactly when
    ``y = x +- 1 (mod N)`` and rank 0 otherwise.

    Construction validates both properties and raises
    :class:`NotACycleWalkError` on failure. The stored matrix is read-only.
    """

    __slots__ = ("n", "matrix")

    def __init__(self, matrix, *, unit_tol: float = EPS_UNIT, rank_tol: float = EPS_RANK):
        m = _as_square_even(matrix)
        n = m.shape[0] // 2
        if n < 3:
            raise NotACycleWalkError(f"a cycle needs at least 3 vertices, got {n}")
        res = unitarity_residual(m)
        if res > unit_tol:
            raise NotACycleWalkError(f"not unitary: residual {res:.3e} > {unit_tol:.1e}")
        ranks = _block_ranks(m, rank_tol)
        bad = np.argwhere(ranks != _cycle_pattern(n))
        if len(bad):
            y, x = bad[0]
            raise NotACycleWalkError(
                f"not a cycle walk: rank of block (y={y + 1}, x={x + 1}) is {ranks[y, x]}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("CycleWalk is immutable")

    def __repr__(self) -> str:
        return f"CycleWalk(n={self.n})"

    @property
    def dim(self) -> int:
        return 2 * self.n

    def block(self, y: int, x: int) -> np.ndarray:
        """``P_y U P_x`` as a 2x2 array (0-based vertices)."""
        return self.matrix[2 * y:2 * y + 2, 2 * x:2 * x + 2]

    def unitarity_residual(self) -> float:
        return unitarity_residual(self.matrix)


def _raw_matrix(u) -> np.ndarray:
    return u.matrix if isinstance(u, CycleWalk) else _as_square_even(u)


# --------------------------------------------------------------------------- #
# Multidigraph and the natural expression
# --------------------------------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class Multidigraph:
    """Edge counts ``card[y, x]`` = number of directed edges from ``x`` to ``y``."""

    n: int
    card: np.ndarray

    def out_degree(self, x: int) -> int:
        return int(self.card[:, x].sum())

    def in_degree(self, y: int) -> int:
        return int(self.card[y, :].sum())

    @property
    def num_edges(self) -> int:
        return int(self.card.sum())


def digraph_of(u, *, unit_tol: float = EPS_UNIT, rank_tol: float = EPS_RANK) -> Multidigraph:
    """Multidigraph of a walk: ``card(y, x) = rank P_y U P_x``.

    Accepts a :class:`CycleWalk` or any even-dimensional unitary array.
    """
    m = _raw_matrix(u)
    res = unitarity_residual(m)
    if res > unit_tol:
        raise ValueError(f"not unitary: residual {res:.3e}")
    # sigma_max of a unitary is 1, so the relative cutoff is absolute here
    card = _block_ranks(m, rank_tol).astype(int)
    card.setflags(write=False)
    return Multidigraph(n=m.shape[0] // 2, card=card)


def check_conditions(u, **tols) -> tuple[bool, bool]:
    """``(origin_ok, terminus_ok)``: every vertex has out-degree 2 / in-degree 2."""
    g = digraph_of(u, **tols)
    origin_ok = all(g.out_degree(x) == 2 for x in range(g.n))
    terminus_ok = all(g.in_degree(x) == 2 for x in range(g.n))
    return origin_ok, terminus_ok


@dataclass(frozen=True, eq=False)
class Edge:
    """Directed edge ``origin -> terminus`` with its rank-one piece of the walk.

    ``xi`` lives in the terminus space, ``zeta`` in the origin space; both are
    local 2-vectors. ``index`` orders parallel edges by descending singular value.
    """

    origin: int
    terminus: int
    index: int
    xi: np.ndarray
    zeta: np.ndarray


@dataclass(frozen=True, eq=False)
class NaturalExpression:
    n: int
    edges: tuple[Edge, ...]

    def _embed(self, vertex: int, v: np.ndarray) -> np.ndarray:
        out = np.zeros(2 * self.n, dtype=complex)
        out[2 * vertex:2 * vertex + 2] = v
        return out

    def xi_matrix(self) -> np.ndarray:
        """Columns are the full-space ``xi`` vectors, in edge order."""
        return np.column_stack([self._embed(e.terminus, e.xi) for e in self.edges])

    def zeta_matrix(self) -> np.ndarray:
        return np.column_stack([self._embed(e.origin, e.zeta) for e in self.edges])

    def reconstruct(self) -> np.ndarray:
        return self.xi_matrix() @ self.zeta_matrix().conj().T


def natural_expression(u, *, unit_tol: float = EPS_UNIT,
                       rank_tol: float = EPS_RANK) -> NaturalExpression:
    """Write ``U = sum_e |xi_e><zeta_e|`` over the edges of its multidigraph.

    ``xi_e`` runs over left singular vectors of each nonzero block (phase fixed so
    the largest coordinate is real positive) and ``zeta_e = U^H xi_e``, which the
    origin condition confines to the origin vertex.
    """
    m = _raw_matrix(u)
    g = digraph_of(m, unit_tol=unit_tol, rank_tol=rank_tol)
    origin_ok, terminus_ok = (all(g.out_degree(x) == 2 for x in range(g.n)),
                              all(g.in_degree(x) == 2 for x in range(g.n)))
    if not (origin_ok and terminus_ok):
        raise ValueError("walk violates the degree conditions; no natural expression")
    n = g.n
    mh = m.conj().T
    edges = []
    for x in range(n):
        for y in range(n):
            k = int(g.card[y, x])
            if k == 0:
                continue
            left, _, _ = svd2x2(m[2 * y:2 * y + 2, 2 * x:2 * x + 2], tol=rank_tol)
            for idx in range(k):
                xi = _fix_phase(left[:, idx])
                full = mh[:, 2 * y:2 * y + 2] @ xi
                zeta = full[2 * x:2 * x + 2]
                leak = np.linalg.norm(full) ** 2 - np.linalg.norm(zeta) ** 2
                if leak > unit_tol:
                    raise ValueError(
                        f"edge {x + 1}->{y + 1}: U^H xi leaves the origin space ({leak:.3e})"
                    )
                edges.append(Edge(origin=x, terminus=y, index=idx, xi=xi, zeta=zeta))
    if len(edges) != 2 * n:
        raise ValueError(f"expected {2 * n} edges, found {len(edges)}")
    return NaturalExpression(n=n, edges=tuple(edges))


# --------------------------------------------------------------------------- #
# Local frames
# --------------------------------------------------------------------------- #


def _phase(z: complex) -> float:
    return 0.0 if abs(z) <= _PHASE_PIN else reduce_mod_2pi(math.atan2(z.imag, z.real))


@dataclass(frozen=True)
class LocalFrame:
    """Orthonormal pair at one vertex::

        eta1 = r e^{ia} e1 + s e^{ib} e2
        eta2 = s e^{ic} e1 + r e^{id} e2,     s = sqrt(1 - r^2)

    Orthogonality is ``a - c = b - d + pi (mod 2*pi)``.
    """

    r: float
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for name in ("r", "a", "b", "c", "d"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"frame field {name} is not finite")
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"frame r = {self.r!r} outside [0, 1]")

    @property
    def s(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.r * self.r))

    @property
    def degenerate(self) -> bool:
        return self.r <= EPS_DEG or self.s <= EPS_DEG

    @property
    def eta1(self) -> np.ndarray:
        return np.array([self.r * np.exp(1j * self.a), self.s * np.exp(1j * self.b)])

    @property
    def eta2(self) -> np.ndarray:
        return np.array([self.s * np.exp(1j * self.c), self.r * np.exp(1j * self.d)])

    def orthonormality_residual(self) -> float:
        f = np.column_stack([self.eta1, self.eta2])
        return float(np.max(np.abs(f.conj().T @ f - np.eye(2))))

    def constraint_residual(self) -> float:
        """Wrap distance between ``a - c`` and ``b - d + pi``."""
        dd = reduce_mod_2pi((self.a - self.c) - (self.b - self.d + math.pi))
        return min(dd, TWO_PI - dd)

    @classmethod
    def from_vectors(cls, eta1, eta2) -> "LocalFrame":
        """Read ``(r, a, b, c, d)`` off an orthonormal pair.

        Phases of coordinates with negligible magnitude are pinned to 0, and the
        phase on the smaller-magnitude pair is then re-derived from the
        orthogonality relation so the frame satisfies it exactly.
        """
        eta1 = np.asarray(eta1, dtype=complex)
        eta2 = np.asarray(eta2, dtype=complex)
        r = 0.5 * (abs(eta1[0]) + abs(eta2[1]))
        s = 0.5 * (abs(eta1[1]) + abs(eta2[0]))
        r = min(1.0, max(0.0, r / math.hypot(r, s))) if (r or s) else 0.0
        a, b = _phase(eta1[0]), _phase(eta1[1])
        c, d = _phase(eta2[0]), _phase(eta2[1])
        if r <= s:
            if r <= _PHASE_PIN:
                a = 0.0
            d = reduce_mod_2pi(b - a + c + math.pi)
        else:
            if s <= _PHASE_PIN:
                b = 0.0
            c = reduce_mod_2pi(a - b + d - math.pi)
        return cls(r=r, a=a, b=b, c=c, d=d)

    @classmethod
    def from_unitary(cls, coin: np.ndarray) -> "LocalFrame":
        """Frame whose ``eta1, eta2`` are the columns of a 2x2 unitary."""
        coin = np.asarray(coin)
        return cls.from_vectors(coin[:, 0], coin[:, 1])


# --------------------------------------------------------------------------- #
# Constructors
# --------------------------------------------------------------------------- #


def _assemble(eta1: np.ndarray, eta2: np.ndarray) -> np.ndarray:
    """``sum_x |e1^{x+1}><eta1^x| + |e2^{x-1}><eta2^x|`` from ``(n, 2)`` arrays."""
    n = eta1.shape[0]
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    for x in range(n):
        up, down = wrap_vertex(x + 1, n), wrap_vertex(x - 1, n)
        m[2 * up, 2 * x:2 * x + 2] = np.conj(eta1[x])
        m[2 * down + 1, 2 * x:2 * x + 2] = np.conj(eta2[x])
    return m


def build_canonical_matrix(r: Sequence[float], theta: Sequence[float], alpha: float) -> np.ndarray:
    """Dense matrix of the canonical walk with parameters ``(r, theta, alpha)``.

    Any finite angles are accepted; only ``0 <= r_x <= 1`` is enforced.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if r.ndim != 1 or r.shape != theta.shape:
        raise ValueError("r and theta must be 1-D sequences of equal length")
    if len(r) < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {len(r)}")
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(theta)) and math.isfinite(alpha)):
        raise ValueError("canonical parameters must be finite")
    for x, rx in enumerate(r):
        if not 0.0 <= rx <= 1.0:
            raise ValueError(f"r[{x + 1}] = {rx!r} outside [0, 1]")
    s = np.sqrt(1.0 - r * r)
    eta1 = np.column_stack([r, s * np.exp(1j * theta)])
    eta2 = np.column_stack([-s * np.exp(1j * (alpha - theta)), r * np.exp(1j * alpha) * np.ones_like(r)])
    return _assemble(eta1, eta2)


def build_from_canonical(params) -> CycleWalk:
    """Materialize a walk from anything with ``r``, ``theta`` and ``alpha``."""
    return CycleWalk(build_canonical_matrix(params.r, params.theta, params.alpha))


def build_from_frames(frames: Sequence[LocalFrame], *, tol: float = EPS_UNIT) -> CycleWalk:
    """``sum_x |e1^{x+1}><eta1^x| + |e2^{x-1}><eta2^x|``."""
    frames = list(frames)
    for x, f in enumerate(frames):
        res = f.orthonormality_residual()
        if res > tol:
            raise ValueError(f"frame at vertex {x + 1} is not orthonormal (residual {res:.3e})")
    eta1 = np.array([f.eta1 for f in frames])
    eta2 = np.array([f.eta2 for f in frames])
    return CycleWalk(_assemble(eta1, eta2))


# --------------------------------------------------------------------------- #
# Gauge transforms
# --------------------------------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class GaugeTransform:
    """Block-diagonal unitary ``W = (+)_x W_x`` with a global phase ``e^{il}``."""

    n: int
    blocks: np.ndarray
    global_phase: float = 0.0
    tol: float = field(default=EPS_UNIT, repr=False)

    def __post_init__(self):
        blocks = np.array(self.blocks, dtype=complex)
        if blocks.shape != (self.n, 2, 2):
            raise ValueError(f"expected blocks of shape ({self.n}, 2, 2), got {blocks.shape}")
        res = np.max(np.abs(np.conj(np.swapaxes(blocks, -1, -2)) @ blocks - np.eye(2)))
        if res > self.tol:
            raise ValueError(f"gauge block not unitary (residual {res:.3e})")
        blocks.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "global_phase", reduce_mod_2pi(self.global_phase))

    @classmethod
    def identity(cls, n: int, global_phase: float = 0.0) -> "GaugeTransform":
        return cls(n=n, blocks=np.broadcast_to(np.eye(2, dtype=complex), (n, 2, 2)),
                   global_phase=global_phase)

    @classmethod
    def diagonal(cls, p: Sequence[float], q: Sequence[float],
                 global_phase: float = 0.0) -> "GaugeTransform":
        """``W_x = diag(e^{ip_x}, e^{iq_x})``."""
        p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
        blocks = np.zeros((len(p), 2, 2), dtype=complex)
        blocks[:, 0, 0] = np.exp(1j * p)
        blocks[:, 1, 1] = np.exp(1j * q)
        return cls(n=len(p), blocks=blocks, global_phase=global_phase)

    def matrix(self) -> np.ndarray:
        """``W`` as a dense ``2N x 2N`` matrix (without the global phase)."""
        m = np.zeros((2 * self.n, 2 * self.n), dtype=complex)
        for x in range(self.n):
            m[2 * x:2 * x + 2, 2 * x:2 * x + 2] = self.blocks[x]
        return m

    def compose(self, first: "GaugeTransform") -> "GaugeTransform":
        """``self o first``: apply ``first``, then ``self``."""
        if first.n != self.n:
            raise ValueError("gauge dimension mismatch")
        return GaugeTransform(n=self.n, blocks=self.blocks @ first.blocks,
                              global_phase=self.global_phase + first.global_phase)

    def inverse(self) -> "GaugeTransform":
        return GaugeTransform(n=self.n, blocks=np.conj(np.swapaxes(self.blocks, -1, -2)),
                              global_phase=-self.global_phase)

    def conjugate(self, matrix: np.ndarray) -> np.ndarray:
        """``e^{il} W M W^H`` for a raw ``2N x 2N`` array."""
        n = self.n
        m4 = np.asarray(matrix).reshape(n, 2, n, 2)
        out = np.einsum("yik,ykxm,xjm->yixj", self.blocks, m4, np.conj(self.blocks))
        return np.exp(1j * self.global_phase) * out.reshape(2 * n, 2 * n)

    def apply_state(self, psi: np.ndarray) -> np.ndarray:
        """``W psi`` (global phase dropped: it is a walk phase, not a state map)."""
        n = self.n
        return np.einsum("xij,xj->xi", self.blocks, np.asarray(psi).reshape(n, 2)).reshape(2 * n)


def apply_gauge(w: GaugeTransform, u: CycleWalk, *, tol: float = EPS_UNIT) -> CycleWalk:
    """``e^{il} W U W^H`` as a new :class:`CycleWalk`."""
    if w.n != u.n:
        raise ValueError(f"gauge acts on {w.n} vertices, walk has {u.n}")
    return CycleWalk(w.conjugate(u.matrix), unit_tol=tol)


# --------------------------------------------------------------------------- #
# Zeta form
# --------------------------------------------------------------------------- #


def to_zeta_form(u: CycleWalk, *, rank_tol: float = EPS_RANK) -> tuple[list[LocalFrame], GaugeTransform]:
    """Gauge ``U`` so every arriving edge ends on a basis vector.

    At vertex ``x`` the edge from ``x - 1`` gets label 1 and the edge from
    ``x + 1`` gets label 2; ``W_x`` maps their ``xi`` vectors to ``e1, e2``.
    Returns the frames of ``W U W^H`` and ``W`` (global phase 0).
    """
    n = u.n
    blocks = np.zeros((n, 2, 2), dtype=complex)
    for x in range(n):
        arrivals = (wrap_vertex(x - 1, n), wrap_vertex(x + 1, n))
        for i, origin in enumerate(arrivals):
            left, s, _ = svd2x2(u.block(x, origin), tol=rank_tol)
            if s[0] <= rank_tol or s[1] > rank_tol:
                raise NotACycleWalkError(
                    f"block (y={x + 1}, x={origin + 1}) is not rank one: singular values {s}"
                )
            blocks[x, i, :] = np.conj(_fix_phase(left[:, 0]))
    w = GaugeTransform(n=n, blocks=blocks)
    zeta = w.conjugate(u.matrix)
    frames = []
    for x in range(n):
        up, down = wrap_vertex(x + 1, n), wrap_vertex(x - 1, n)
        eta1 = np.conj(zeta[2 * up, 2 * x:2 * x + 2])
        eta2 = np.conj(zeta[2 * down + 1, 2 * x:2 * x + 2])
        frames.append(LocalFrame.from_vectors(eta1, eta2))
    return frames, w


# --------------------------------------------------------------------------- #
# Shift and random sampling
# --------------------------------------------------------------------------- #


def shift_operator(n: int) -> np.ndarray:
    """Permutation ``S e_i^x = e_i^{x+1}``."""
    s = np.zeros((2 * n, 2 * n))
    for x in range(n):
        for i in range(2):
            s[2 * wrap_vertex(x + 1, n) + i, 2 * x + i] = 1.0
    return s


def haar_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of U(2).

    ``e^{i phi} [[e^{i psi} cos t, e^{i chi} sin t], [-e^{-i chi} sin t, e^{-i psi} cos t]]``
    with ``cos^2 t`` uniform on [0, 1] and the three phases uniform.
    """
    u, phi, psi, chi = rng.random(4)
    phi, psi, chi = TWO_PI * phi, TWO_PI * psi, TWO_PI * chi
    ct = math.sqrt(u)
    st = math.sqrt(1.0 - u)
    m = np.array([
        [np.exp(1j * psi) * ct, np.exp(1j * chi) * st],
        [-np.exp(-1j * chi) * st, np.exp(-1j * psi) * ct],
    ])
    return np.exp(1j * phi) * m


def random_gauge(n: int, rng: np.random.Generator, *, uniform: bool = False) -> GaugeTransform:
    """Haar blocks and a uniform global phase. ``uniform`` repeats one block
    at every vertex, which keeps translation invariance."""
    if uniform:
        block = haar_unitary_2x2(rng)
        blocks = np.array([block] * n)
    else:
        blocks = np.array([haar_unitary_2x2(rng) for _ in range(n)])
    return GaugeTransform(n=n, blocks=blocks, global_phase=TWO_PI * rng.random())


def random_cycle_walk(n: int, seed: int, scramble: bool = False, *,
                      translation_invariant: bool = False) -> CycleWalk:
    """Seeded random walk built from Haar-random frames.

    Uses numpy's PCG64 generator. Frames are drawn first, the scrambling gauge
    afterwards, so ``scramble=True`` and ``False`` share the same underlying
    walk for a given seed.
    """
    if int(n) != n or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if translation_invariant:
        coin = haar_unitary_2x2(rng)
        coins = [coin] * n
    else:
        coins = [haar_unitary_2x2(rng) for _ in range(n)]
    eta1 = np.array([c[:, 0] for c in coins])
    eta2 = np.array([c[:, 1] for c in coins])
    walk = CycleWalk(_assemble(eta1, eta2))
    if scramble:
        walk = apply_gauge(random_gauge(n, rng, uniform=translation_invariant), walk)
    return walk

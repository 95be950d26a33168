"""Readers and writers for walk, parameter, witness, state and CSV files.

Floats are written with 17 significant digits (``%.17g``) so every double
round-trips exactly; complex numbers are ``[re, im]`` pairs.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .canonicalizer import CanonicalParams
from .dynamics import VertexDistribution
from .walk_core import GaugeTransform

__all__ = [
    "FormatError",
    "dumps",
    "walk_to_json",
    "walk_matrix_from_json",
    "params_to_json",
    "params_from_json",
    "witness_to_json",
    "witness_from_json",
    "state_from_json",
    "distributions_csv",
    "spectrum_csv",
    "read_json",
]


class FormatError(ValueError):
    """File is missing, unreadable, or not in the expected layout."""


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return "%.17g" % x


def dumps(obj) -> str:
    """Compact JSON with floats at 17 significant digits, plus a newline."""

    def enc(o) -> str:
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _num(o)
        if isinstance(o, (complex, np.complexfloating)):
            return f"[{_num(o.real)}, {_num(o.imag)}]"
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {enc(v)}" for k, v in o.items()) + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            return "[" + ", ".join(enc(v) for v in o) + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj) + "\n"


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _complex(entry, where: str) -> complex:
    if (not isinstance(entry, (list, tuple)) or len(entry) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)):
        raise FormatError(f"{where}: expected a [re, im] pair")
    return complex(float(entry[0]), float(entry[1]))


def _complex_array(data, shape: tuple[int, ...], where: str) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: malformed numeric array") from exc
    if arr.shape != shape + (2,):
        raise FormatError(f"{where}: expected shape {shape} of [re, im] pairs, got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _int_field(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"field {key!r} must be an integer")
    return v


def walk_to_json(matrix: np.ndarray) -> str:
    m = np.asarray(matrix, dtype=complex)
    return dumps({"n": m.shape[0] // 2, "matrix": m})


def walk_matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise FormatError("walk file must be an object with 'n' and 'matrix'")
    n = _int_field(obj, "n")
    if n < 1:
        raise FormatError(f"field 'n' must be positive, got {n}")
    return _complex_array(obj["matrix"], (2 * n, 2 * n), "matrix")


def params_to_json(params: CanonicalParams) -> str:
    return dumps({
        "n": params.n,
        "r": list(params.r),
        "theta": list(params.theta),
        "alpha": params.alpha,
        "degenerate": bool(params.degenerate),
    })


def params_from_json(obj) -> CanonicalParams:
    """Parse a parameter file. Shape problems raise :class:`FormatError`;
    range checks are left to the caller."""
    if not isinstance(obj, dict):
        raise FormatError("parameter file must be a JSON object")
    n = _int_field(obj, "n")
    for key in ("r", "theta"):
        v = obj.get(key)
        if not isinstance(v, list) or not all(
                isinstance(e, (int, float)) and not isinstance(e, bool) for e in v):
            raise FormatError(f"field {key!r} must be a list of numbers")
    alpha = obj.get("alpha")
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool):
        raise FormatError("field 'alpha' must be a number")
    degenerate = obj.get("degenerate")
    if degenerate is not None and not isinstance(degenerate, bool):
        raise FormatError("field 'degenerate' must be a boolean")
    try:
        return CanonicalParams(n=n, r=obj["r"], theta=obj["theta"], alpha=alpha)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def witness_to_json(w: GaugeTransform) -> str:
    return dumps({"n": w.n, "blocks": w.blocks, "global_phase": w.global_phase})


def witness_from_json(obj) -> GaugeTransform:
    if not isinstance(obj, dict):
        raise FormatError("witness file must be a JSON object")
    n = _int_field(obj, "n")
    blocks = _complex_array(obj.get("blocks"), (n, 2, 2), "blocks")
    phase = obj.get("global_phase")
    if not isinstance(phase, (int, float)) or isinstance(phase, bool):
        raise FormatError("field 'global_phase' must be a number")
    try:
        return GaugeTransform(n=n, blocks=blocks, global_phase=float(phase))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def state_from_json(obj, dim: int) -> np.ndarray:
    """Amplitude vector from ``[[re, im], ...]`` or ``{"amplitudes": [...]}``."""
    if isinstance(obj, dict):
        obj = obj.get("amplitudes")
    if not isinstance(obj, list):
        raise FormatError("state file must be a list of [re, im] pairs")
    if len(obj) != dim:
        raise FormatError(f"state has {len(obj)} amplitudes, walk needs {dim}")
    return np.array([_complex(e, f"state[{k}]") for k, e in enumerate(obj)])


def distributions_csv(dists: list[VertexDistribution]) -> str:
    lines = ["step,vertex,probability"]
    for d in dists:
        for x, p in enumerate(d.probs, start=1):
            lines.append(f"{d.step},{x},{_num(p)}")
    return "\n".join(lines) + "\n"


def spectrum_csv(eigenvalues) -> str:
    lines = ["re,im,arg"]
    for z in eigenvalues:
        lines.append(f"{_num(z.real)},{_num(z.imag)},{_num(math.atan2(z.imag, z.real))}")
    return "\n".join(lines) + "\n"

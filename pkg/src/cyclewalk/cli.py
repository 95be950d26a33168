"""Command-line interface.

Exit codes: 0 success / equivalent, 1 not equivalent, 2 I/O or parse error,
3 invariant failure, 4 witness verification failure, 5 indeterminate.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import formats
from .canonicalizer import (
    CanonicalizationError,
    Verdict,
    WitnessVerificationError,
    are_equivalent,
    canonicalize,
)
from .dynamics import WalkState, distribution, evolve, spectrum
from .walk_core import (
    EPS_UNIT,
    CycleWalk,
    NotACycleWalkError,
    build_canonical_matrix,
    random_cycle_walk,
)

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_IO = 2
EXIT_INVARIANT = 3
EXIT_WITNESS = 4
EXIT_INDETERMINATE = 5

_VERDICT_EXIT = {
    Verdict.EQUIVALENT: EXIT_OK,
    Verdict.NOT_EQUIVALENT: EXIT_NOT_EQUIVALENT,
    Verdict.INDETERMINATE_DEGENERATE: EXIT_INDETERMINATE,
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from exc


def _load(path: str):
    try:
        return formats.read_json(path)
    except formats.FormatError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc


def _load_walk(path: str, tol: float) -> CycleWalk:
    try:
        matrix = formats.walk_matrix_from_json(_load(path))
    except formats.FormatError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc}") from exc
    try:
        return CycleWalk(matrix, unit_tol=tol)
    except (NotACycleWalkError, ValueError) as exc:
        raise CliError(EXIT_INVARIANT, f"{path}: {exc}") from exc


def _witness_path(explicit: str | None, anchor: str | None) -> str | None:
    if explicit:
        return explicit
    if anchor and anchor != "-":
        p = Path(anchor)
        return str(p.with_name(p.stem + ".witness.json"))
    return None


def cmd_gen(args) -> int:
    try:
        params = formats.params_from_json(_load(args.params))
    except formats.FormatError as exc:
        raise CliError(EXIT_IO, f"{args.params}: {exc}") from exc
    for problem in params.range_violations():
        if problem.startswith("r["):
            raise CliError(EXIT_INVARIANT, problem)
        print(f"warning: non-canonical parameter: {problem}", file=sys.stderr)
    try:
        walk = CycleWalk(build_canonical_matrix(params.r, params.theta, params.alpha),
                         unit_tol=args.tol)
    except ValueError as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc
    _write(args.output, formats.walk_to_json(walk.matrix))
    print(f"unitarity_residual={walk.unitarity_residual():.3e}",
          file=sys.stdout if args.output not in (None, "-") else sys.stderr)
    return EXIT_OK


def cmd_canon(args) -> int:
    walk = _load_walk(args.walk, args.tol)
    try:
        params, witness = canonicalize(walk, tol=args.tol)
    except CanonicalizationError as exc:
        raise CliError(EXIT_WITNESS, str(exc)) from exc
    residual = float(np.max(np.abs(witness.conjugate(walk.matrix)
                                   - build_canonical_matrix(params.r, params.theta, params.alpha))))
    _write(args.output, formats.params_to_json(params))
    wpath = _witness_path(args.witness, args.output)
    if wpath:
        _write(wpath, formats.witness_to_json(witness))
    print(f"verification_residual={residual:.3e}",
          file=sys.stdout if args.output not in (None, "-") else sys.stderr)
    return EXIT_OK


def cmd_equiv(args) -> int:
    u1 = _load_walk(args.walk_a, args.tol)
    u2 = _load_walk(args.walk_b, args.tol)
    if u1.n != u2.n:
        raise CliError(EXIT_INVARIANT, f"walks on different cycles: {u1.n} vs {u2.n}")
    try:
        verdict = are_equivalent(u1, u2)
    except (WitnessVerificationError, CanonicalizationError) as exc:
        raise CliError(EXIT_WITNESS, str(exc)) from exc
    print(f"{verdict.status.value} max_param_distance={verdict.max_param_distance:.17g}")
    if verdict.status is Verdict.EQUIVALENT and args.witness:
        _write(args.witness, formats.witness_to_json(verdict.witness))
    return _VERDICT_EXIT[verdict.status]


def cmd_simulate(args) -> int:
    walk = _load_walk(args.walk, args.tol)
    try:
        amps = formats.state_from_json(_load(args.state), walk.dim)
    except formats.FormatError as exc:
        raise CliError(EXIT_IO, f"{args.state}: {exc}") from exc
    norm = float(np.linalg.norm(amps))
    if norm == 0.0 or abs(norm - 1.0) > 1e-6:
        raise CliError(EXIT_INVARIANT, f"{args.state}: state norm {norm!r} is not 1")
    if abs(norm - 1.0) > 1e-12:
        print(f"warning: renormalizing state (norm {norm:.17g})", file=sys.stderr)
        amps = amps / norm
    states = evolve(walk, WalkState(walk.n, amps), args.steps)
    dists = [distribution(psi, step=t) for t, psi in enumerate(states)]
    _write(args.output, formats.distributions_csv(dists))
    return EXIT_OK


def cmd_random(args) -> int:
    walk = random_cycle_walk(args.n, args.seed, args.scramble,
                             translation_invariant=args.translation_invariant)
    _write(args.output, formats.walk_to_json(walk.matrix))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    walk = _load_walk(args.walk, args.tol)
    _write(args.output, formats.spectrum_csv(spectrum(walk)))
    return EXIT_OK


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0.0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _cycle_size(text: str) -> int:
    v = int(text)
    if v < 3:
        raise argparse.ArgumentTypeError("n must be >= 3")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("steps must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclewalk",
                                     description="Canonical forms of quantum walks on cycles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=_positive_float, default=EPS_UNIT,
                       help="unitarity / verification tolerance (default %(default)g)")

    p = sub.add_parser("gen", help="build a walk from canonical parameters")
    p.add_argument("params")
    p.add_argument("-o", "--output")
    add_tol(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("canon", help="canonicalize a walk")
    p.add_argument("walk")
    p.add_argument("-o", "--output")
    p.add_argument("--witness", help="witness path (default: <output stem>.witness.json)")
    add_tol(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("equiv", help="decide unitary equivalence of two walks")
    p.add_argument("walk_a")
    p.add_argument("walk_b")
    p.add_argument("--witness", help="where to write the witness when equivalent")
    add_tol(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("simulate", help="per-step vertex distributions as CSV")
    p.add_argument("walk")
    p.add_argument("--state", required=True)
    p.add_argument("--steps", type=_nonneg, required=True)
    p.add_argument("-o", "--output")
    add_tol(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("random", help="seeded random cycle walk")
    p.add_argument("--n", type=_cycle_size, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--scramble", action="store_true")
    p.add_argument("--translation-invariant", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("spectrum", help="eigenvalues as CSV")
    p.add_argument("walk")
    p.add_argument("-o", "--output")
    add_tol(p)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

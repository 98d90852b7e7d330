"""Command-line front end: ``cnotsynth {synth,verify,algebra,examples}``.

Exit codes: 0 success, 1 malformed input or failed check, 2 Trotter step
budget exhausted (``synth`` only).
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .circuit import read_circuit, write_circuit
from .errors import SynthesisError
from .linalg import DenseMatrix, pauli_exp, read_matrix, write_matrix
from .pauli import Field, SignedPauliString
from .synthesis import (
    DEFAULT_MAX_STEPS,
    compile_target,
    pauli_exponential_circuit,
    reversed_cnot_circuit,
    swap_circuit,
)
from .verification import expected_algebra_dimension, generated_algebra_dimension, verify_circuit

EXIT_OK, EXIT_BAD_INPUT, EXIT_EXHAUSTED = 0, 1, 2

LADDER_STRING = "XIZY"
LADDER_ANGLE = 0.7


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_synth(args) -> int:
    try:
        target = read_matrix(args.target)
    except (OSError, SynthesisError, ValueError) as exc:
        _err(str(exc))
        return EXIT_BAD_INPUT
    if args.field is not None and Field.parse(args.field) is not target.field:
        _err(f"--field {args.field} does not match the matrix file field {target.field.value}")
        return EXIT_BAD_INPUT
    try:
        report = compile_target(target, args.eps, args.max_steps)
    except (SynthesisError, ValueError) as exc:
        _err(str(exc))
        return EXIT_BAD_INPUT
    write_circuit(args.out, report.circuit)
    print("\n".join(report.lines()))
    return EXIT_OK if report.success else EXIT_EXHAUSTED


def cmd_verify(args) -> int:
    try:
        circuit = read_circuit(args.circuit)
        target = read_matrix(args.target)
        report = verify_circuit(circuit, target, args.eps)
    except (OSError, SynthesisError, ValueError, IndexError) as exc:
        _err(str(exc))
        return EXIT_BAD_INPUT
    print(f"target: {args.target}")
    print(f"circuit: {args.circuit}")
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_BAD_INPUT


def cmd_algebra(args) -> int:
    try:
        got = generated_algebra_dimension(args.n, args.field)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_BAD_INPUT
    want = expected_algebra_dimension(args.n, args.field)
    ok = got == want
    print(f"{got} of {want}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_BAD_INPUT


def golden_pairs() -> dict[str, tuple]:
    """Name -> (circuit, target matrix) for the worked constructions."""
    ladder = SignedPauliString.parse(LADDER_STRING, Field.COMPLEX)
    vbar = np.eye(4)[[0, 3, 2, 1]]
    swap = np.eye(4)[[0, 2, 1, 3]]
    return {
        "ladder_exp_XIZY": (pauli_exponential_circuit(ladder, LADDER_ANGLE), pauli_exp(ladder, LADDER_ANGLE)),
        "reversed_cnot_C": (reversed_cnot_circuit(Field.COMPLEX), DenseMatrix(Field.COMPLEX, vbar)),
        "reversed_cnot_R": (reversed_cnot_circuit(Field.REAL), DenseMatrix(Field.REAL, vbar)),
        "swap_C": (swap_circuit(Field.COMPLEX), DenseMatrix(Field.COMPLEX, swap)),
        "swap_R": (swap_circuit(Field.REAL), DenseMatrix(Field.REAL, swap)),
    }


def cmd_examples(args) -> int:
    out = args.out
    if os.path.exists(out) and (not os.path.isdir(out) or os.listdir(out)):
        _err(f"output directory {out!r} must be empty or absent")
        return EXIT_BAD_INPUT
    os.makedirs(out, exist_ok=True)
    for name, (circuit, target) in golden_pairs().items():
        write_circuit(os.path.join(out, f"{name}.circuit"), circuit)
        write_matrix(os.path.join(out, f"{name}.matrix"), target)
        print(f"{name}: {circuit.cnot_count} CNOT, {circuit.local_count} local")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cnotsynth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile a target matrix file into a circuit file")
    p.add_argument("target")
    p.add_argument("--field", choices=["C", "R"])
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit file against a target matrix file")
    p.add_argument("circuit")
    p.add_argument("target")
    p.add_argument("--eps", type=float, default=1e-6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebra", help="dimension of the Lie algebra generated by C-NOT and locals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", choices=["C", "R"], required=True)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("examples", help="write golden circuit/target pairs")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

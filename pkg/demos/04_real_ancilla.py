"""Why a reflection on rebits needs one extra rebit.

A C-NOT on three or more rebits is an even permutation and an embedded local
gate has determinant +1 from two rebits on, so circuits of width >= 3 stay in
SO. On exactly two rebits a single C-NOT is a transposition, det -1.
"""
import warnings

import numpy as np

from cnotsynth import Circuit, CNOT, Field, determinant_parity_check, evaluate_circuit
from cnotsynth.errors import BranchCutWarning, DisconnectedComponentError
from cnotsynth.synthesis import orthogonal_compile, trotter_compile
from cnotsynth.verification import ancilla_restriction_error

R = Field.REAL
for width in (2, 3, 4):
    print(f"det of one C-NOT on {width} rebits: {determinant_parity_check(Circuit(R, width, [CNOT(0, 1)])):+d}")

target = np.diag([1.0, -1.0])
try:
    trotter_compile(target)
except DisconnectedComponentError as exc:
    print(f"\ntrotter_compile refuses: {exc}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore", BranchCutWarning)
    rep = orthogonal_compile(target)
print(f"orthogonal_compile: ancilla_used={rep.ancilla_used}, width={rep.circuit.width}, error={rep.achieved_error:.1e}")
m = evaluate_circuit(rep.circuit)
for a in (0, 1):
    print(f"  ancilla |{a}> block error: {ancilla_restriction_error(m, target, a):.1e}")

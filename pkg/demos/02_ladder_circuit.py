"""Compile exp(i t X I Z Y) into C-NOTs and single-qubit gates.

The reduction maps the string onto one pivot qubit with a C-NOT ladder, the
rotation sits on the pivot, and the ladder is undone afterwards.
"""
import numpy as np

from cnotsynth import Field, SignedPauliString, evaluate_circuit, pauli_exp, phase_invariant_distance
from cnotsynth.circuit import format_circuit
from cnotsynth.synthesis import pauli_exponential_circuit, reduce_to_pivot

t = 0.7
p = SignedPauliString.parse("XIZY", Field.COMPLEX)
word = reduce_to_pivot(p)
print(f"pivot site (0-based): {word.pivot}, ladder C-NOTs: {word.ladder_length}, sign: {word.sign:+d}")

circ = pauli_exponential_circuit(p, t)
print(format_circuit(circ), end="")
d = phase_invariant_distance(evaluate_circuit(circ), pauli_exp(p, t))
print(f"C-NOTs: {circ.cnot_count}, distance to closed form: {d:.2e}")

print("\nThe same construction on rebits, for X Yt Z:")
q = SignedPauliString.parse("XYtZ", Field.REAL)
rc = pauli_exponential_circuit(q, t)
err = np.abs(evaluate_circuit(rc).data - pauli_exp(q, t).data).max()
print(f"C-NOTs: {rc.cnot_count}, max entry error: {err:.2e}")

"""Pauli strings under C-NOT and local Cliffords, in both number fields.

Shows how symbolic conjugation tracks signs and how a real string with an
even number of Yt factors can never become a generator.
"""
from cnotsynth import Field, SignedPauliString, conjugate_by_cnot, conjugate_by_local, is_real_generator

C, R = Field.COMPLEX, Field.REAL

print("C-NOT conjugation, control on site 0, target on site 1")
for text in ["XI", "IX", "ZI", "IZ", "YI", "IY"]:
    p = SignedPauliString.parse(text, C)
    print(f"  {p} -> {conjugate_by_cnot(p, 0, 1)}")

print("\nThe real step that grows Yt pairs: X Z -> Yt Yt")
p = SignedPauliString.parse("XZ", R)
print(f"  {p} -> {conjugate_by_cnot(p, 0, 1)}")

print("\nThe real Hadamard analogue swaps X and Z up to a sign")
for text in ["Z", "X", "Yt"]:
    p = SignedPauliString.parse(text, R)
    print(f"  Ht {p} Ht^T = {conjugate_by_local(p, 0, 'Ht')}")

print("\nAntisymmetric (generator) test on a few real strings")
for text in ["YtZ", "XZ", "YtYtYt", "YtYt"]:
    p = SignedPauliString.parse(text, R)
    print(f"  {text:8s} generator: {is_real_generator(p)}")

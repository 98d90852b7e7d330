"""First- and second-order Trotter compilation of a random two-qubit unitary.

Prints the error history as the number of steps doubles.
"""
from scipy.stats import unitary_group

from cnotsynth import trotter_compile

u = unitary_group.rvs(4, random_state=7)
for order in (1, 2):
    rep = trotter_compile(u, eps=1e-3, order=order)
    print(f"order {order}: {rep.n_terms} generator terms")
    for n, err in rep.error_history:
        print(f"  n={n:5d}  error={err:.3e}")
    print(f"  -> {rep.cnot_count} C-NOTs, {rep.local_count} single-site gates\n")
